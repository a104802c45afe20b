// Unit tests for the principal-branch power-sum building block.
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "azvisco/power_sum.hpp"

using namespace azvisco;
using Catch::Approx;

namespace {
const double kPi = 3.14159265358979323846;

PowerSum demo_sum() {
    // 0.05 + 1.5 s^0.9 + 0.45 s^1.8
    return PowerSum({{0.05, 0.0}, {1.5, 0.9}, {0.45, 1.8}});
}
}  // namespace

TEST_CASE("construction validates term count, signs, exponents, gaps") {
    CHECK_THROWS_AS(PowerSum({}), Error);
    CHECK_THROWS_AS(PowerSum({{1, 0.1}, {1, 0.2}, {1, 0.3}, {1, 0.4}}), Error);
    CHECK_THROWS_AS(PowerSum({{0.0, 0.5}}), Error);
    CHECK_THROWS_AS(PowerSum({{-2.0, 0.5}}), Error);
    CHECK_THROWS_AS(PowerSum({{1.0, -0.1}}), Error);
    CHECK_THROWS_AS(PowerSum({{1.0, 2.1}}), Error);
    // degenerate / non-increasing gaps
    CHECK_THROWS_AS(PowerSum({{1.0, 0.5}, {2.0, 0.5}}), Error);
    CHECK_THROWS_AS(PowerSum({{1.0, 0.7}, {2.0, 0.5}}), Error);

    try {
        PowerSum({{1.0, 0.5}, {2.0, 0.5}});
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ExponentOutOfRange);
    }
    try {
        PowerSum({{-1.0, 0.5}});
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonPositiveCoefficient);
    }
}

TEST_CASE("evaluation on the positive real axis is the plain real sum") {
    const PowerSum f = demo_sum();
    const double rho = 2.3;
    const double expected = 0.05 + 1.5 * std::pow(rho, 0.9) + 0.45 * std::pow(rho, 1.8);
    const auto v = f.eval(std::complex<double>(rho, 0.0));
    CHECK(v.real() == Approx(expected).epsilon(1e-15));
    CHECK(v.imag() == Approx(0.0).margin(1e-15));
    const auto vp = f.eval_polar(rho, 0.0);
    CHECK(vp.real() == Approx(expected).epsilon(1e-15));
}

TEST_CASE("evaluation on the negative real axis (phi = pi), frozen oracle") {
    // Oracle computed directly from cos/sin of the reduced angles:
    //   0.05 + 1.5 e^{i 0.9 pi} + 0.45 e^{i 1.8 pi}
    const PowerSum f = demo_sum();
    const auto v = f.eval_polar(1.0, kPi);
    const double re = 0.05 - 1.5 * std::cos(0.1 * kPi) + 0.45 * std::cos(0.2 * kPi);
    const double im = 1.5 * std::sin(0.1 * kPi) - 0.45 * std::sin(0.2 * kPi);
    CHECK(v.real() == Approx(re).margin(1e-14));
    CHECK(v.imag() == Approx(im).margin(1e-14));
    // frozen digits
    CHECK(v.real() == Approx(-1.0125271269740039).margin(2e-15));
    CHECK(v.imag() == Approx(0.1990221280308082).margin(2e-15));
}

TEST_CASE("zero argument is rejected") {
    const PowerSum f = demo_sum();
    CHECK_THROWS_AS(f.eval(std::complex<double>(0.0, 0.0)), Error);
    CHECK_THROWS_AS(f.eval_polar(0.0, 1.0), Error);
    try {
        f.eval(0.0);
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ZeroArgument);
    }
}

TEST_CASE("conjugate symmetry holds off the real axis") {
    std::mt19937_64 rng(20240817u);
    std::uniform_real_distribution<double> coeff(0.05, 5.0);
    std::uniform_real_distribution<double> expo(0.0, 0.85);
    std::uniform_real_distribution<double> radius(0.01, 100.0);
    std::uniform_real_distribution<double> angle(0.05, 0.95);  // fraction of pi, upper half plane
    for (int trial = 0; trial < 200; ++trial) {
        const double p1 = expo(rng);
        const PowerSum f({{coeff(rng), 0.0}, {coeff(rng), p1 + 0.1}, {coeff(rng), p1 + 1.05}});
        const double rho = radius(rng);
        const double phi = angle(rng) * kPi;
        const auto up = f.eval_polar(rho, phi);
        const auto dn = f.eval_polar(rho, -phi);
        CHECK(dn.real() == Approx(up.real()).margin(1e-13 * f.scale(rho)));
        CHECK(dn.imag() == Approx(-up.imag()).margin(1e-13 * f.scale(rho)));
    }
}

TEST_CASE("derivative drops the constant and shifts exponents") {
    const PowerSum f = demo_sum();
    const PowerExpr d = f.derivative();
    REQUIRE(d.terms.size() == 2);
    CHECK(d.terms[0].coeff == Approx(1.5 * 0.9));
    CHECK(d.terms[0].exponent == Approx(-0.1));
    CHECK(d.terms[1].coeff == Approx(0.45 * 1.8));
    CHECK(d.terms[1].exponent == Approx(0.8));
    const auto v = d.eval(std::complex<double>(1.0, 0.0));
    CHECK(v.real() == Approx(1.5 * 0.9 + 0.45 * 1.8).epsilon(1e-15));

    // negative exponents evaluate on the principal branch as well
    const auto w = d.eval_polar(4.0, kPi / 2.0);
    const double mag0 = 1.35 * std::pow(4.0, -0.1);
    CHECK(w.real() == Approx(mag0 * std::cos(-0.1 * kPi / 2.0) +
                             0.81 * std::pow(4.0, 0.8) * std::cos(0.8 * kPi / 2.0))
                          .epsilon(1e-14));
}

TEST_CASE("scale is the coefficient mass times max(1, rho)^top") {
    const PowerSum f = demo_sum();
    CHECK(f.scale(0.5) == Approx(2.0));                          // max(1, .5) = 1
    CHECK(f.scale(10.0) == Approx(2.0 * std::pow(10.0, 1.8)));   // 2 * 10^1.8
    CHECK(f.top_exponent() == Approx(1.8));
    CHECK(f.bottom_exponent() == Approx(0.0));
    CHECK(f.top_coeff() == Approx(0.45));
    CHECK(f.bottom_coeff() == Approx(0.05));
}
