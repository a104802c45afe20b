#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "azvisco/constraints.hpp"
#include "azvisco/models.hpp"
#include "support/samplers.hpp"

using azvisco::build_model;
using azvisco::check_narrowed;
using azvisco::check_thermo;
using azvisco::ConstraintOverall;
using azvisco::ConstraintReport;
using azvisco::FractionalOrders;
using azvisco::InequalityCheck;
using azvisco::k_closed_form;
using azvisco::k_generic;
using azvisco::k_nonneg_scan;
using azvisco::ModelCode;
using azvisco::ModelSpec;
using azvisco::ScanGrid;
using Catch::Approx;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Reference three-coefficient family rows (shared orders, three coefficient
// sets that realize the no-pole / real-pole / conjugate-pair regimes).
ModelSpec quad_row(double a1, double a2, double a3) {
    FractionalOrders o;
    o.alpha = 0.35;
    o.beta = 0.55;
    o.nu = 0.4;
    return build_model(ModelCode::IpID_ID, o, {a1, a2, a3}, {0.7, 0.95});
}

ModelSpec case_smooth() { return quad_row(0.05, 1.5, 0.45); }
ModelSpec case_real_pole() { return quad_row(11.0, 28.4029, 20.27); }
ModelSpec case_pair() { return quad_row(11.0, 15.0, 20.27); }

std::vector<const InequalityCheck*> with_id(const ConstraintReport& r, const std::string& id) {
    std::vector<const InequalityCheck*> out;
    for (const auto& c : r.checks)
        if (c.identifier == id) out.push_back(&c);
    return out;
}

// Scale for comparing the two spectral-weight evaluations: the sum of the
// absolute values of the expansion's terms at this rho.
double k_scale(const ModelSpec& m, double rho) {
    double s = 0.0;
    for (std::size_t j = 0; j < m.phi_sigma.size(); ++j)
        for (std::size_t k = 0; k < m.phi_epsilon.size(); ++k)
            s += std::fabs(m.phi_sigma.coeff(j) * m.phi_epsilon.coeff(k) *
                           std::pow(rho, m.phi_sigma.exponent(j) + m.phi_epsilon.exponent(k)));
    return s;
}

}  // namespace

TEST_CASE("dissipativity report for the reference coefficient row") {
    const ModelSpec m = case_smooth();
    const ConstraintReport r = check_thermo(m);
    CHECK(r.code == ModelCode::IpID_ID);
    CHECK(r.overall == ConstraintOverall::ThermoOnly);
    CHECK(r.all_satisfied());

    const auto order_checks = with_id(r, "TD-(A)Z-IID-ID-over-1");
    REQUIRE(order_checks.size() == 6);
    // 0 <= alpha + beta - nu <= 1
    CHECK(order_checks[0]->lhs == 0.0);
    CHECK(order_checks[0]->rhs == Approx(0.5));
    CHECK(order_checks[1]->lhs == Approx(0.5));
    CHECK(order_checks[1]->rhs == 1.0);
    // 1 <= alpha + beta + nu <= 2
    CHECK(order_checks[2]->rhs == Approx(1.3));
    // alpha <= nu <= 1 - beta
    CHECK(order_checks[4]->lhs == Approx(0.35));
    CHECK(order_checks[4]->rhs == Approx(0.4));
    CHECK(order_checks[5]->rhs == Approx(0.45));

    const auto coeff_checks = with_id(r, "TD-(A)Z-IID-ID-over-2");
    REQUIRE(coeff_checks.size() == 2);
    // (a1/a2) * |cos(0.925 pi)| / cos(0.075 pi) = 0.0333 * 0.97237 / 0.99692
    CHECK(coeff_checks[0]->lhs == Approx(0.0325126).margin(5e-6));
    CHECK(coeff_checks[0]->rhs == Approx(0.7368421).margin(1e-6));
    CHECK(coeff_checks[1]->lhs == Approx(0.7368421).margin(1e-6));
    CHECK(coeff_checks[1]->rhs == Approx(3.4174813).margin(5e-6));
    for (const auto* c : coeff_checks) CHECK(c->satisfied);
}

TEST_CASE("narrowed verdicts for the three reference rows") {
    SECTION("smooth row satisfies every narrowed chain") {
        const ConstraintReport r = check_narrowed(case_smooth());
        CHECK(r.overall == ConstraintOverall::NarrowedOK);
        CHECK(r.failed_guard.empty());
        // each two-link chain is listed link by link under one identifier
        CHECK(with_id(r, "STD-I+ID.ID-2").size() == 2);
        CHECK(with_id(r, "STD-I+ID.ID-3").size() == 2);
        CHECK(r.all_satisfied());
    }
    SECTION("real-pole row keeps dissipativity but fails a chain") {
        const ConstraintReport r = check_narrowed(case_real_pole());
        CHECK(r.overall == ConstraintOverall::ThermoOnly);
        CHECK(check_thermo(case_real_pole()).all_satisfied());
        const auto chain = with_id(r, "STD-I+ID.ID-3");
        REQUIRE(chain.size() == 2);
        CHECK_FALSE(chain[0]->satisfied);
        CHECK(chain[0]->lhs == Approx(0.7368421).margin(1e-6));
        CHECK(chain[0]->rhs == Approx(0.48283).margin(5e-4));
    }
    SECTION("conjugate-pair row keeps dissipativity but fails a chain") {
        const ConstraintReport r = check_narrowed(case_pair());
        CHECK(r.overall == ConstraintOverall::ThermoOnly);
        CHECK(check_thermo(case_pair()).all_satisfied());
        const auto chain = with_id(r, "STD-I+ID.ID-3");
        REQUIRE(chain.size() == 2);
        CHECK_FALSE(chain[0]->satisfied);
        CHECK(chain[0]->lhs == Approx(0.7368421).margin(1e-6));
        CHECK(chain[0]->rhs == Approx(0.25499).margin(5e-4));
    }
}

TEST_CASE("spectral weight: reference expansion at rho = 1") {
    const ModelSpec m = case_smooth();
    // literal six-term expansion of this family's weight at rho = 1
    const double literal = 0.05 * 0.7 * std::sin(0.95 * kPi) +
                           1.0 * (0.05 * 0.95 * std::sin(1.85 * kPi) +
                                  1.5 * 0.7 * std::sin(0.05 * kPi)) +
                           1.0 * (1.5 * 0.95 * std::sin(0.95 * kPi) -
                                  0.45 * 0.7 * std::sin(0.85 * kPi)) +
                           1.0 * 0.45 * 0.95 * std::sin(0.05 * kPi);
    CHECK(k_closed_form(m, 1.0) == Approx(literal).epsilon(1e-13));
    CHECK(k_generic(m, 1.0) == Approx(literal).epsilon(1e-12));
    // frozen regression value of the literal expansion
    CHECK(literal == Approx(0.2949546849).margin(1e-9));
}

TEST_CASE("printed sine polynomials match the general expansion") {
    const std::vector<double> rhos = {0.037, 0.41, 1.0, 3.7, 29.0};

    SECTION("five-order family with mixed exponent ladders") {
        std::mt19937_64 rng(101);
        const ModelSpec m = azvsupport::sample_narrowed_ok(ModelCode::IID_IDD, rng);
        const double al = *m.orders.alpha, be = *m.orders.beta, ga = *m.orders.gamma,
                     mu = *m.orders.mu, nu = *m.orders.nu;
        const double a1 = m.phi_sigma.coeff(0), a2 = m.phi_sigma.coeff(1),
                     a3 = m.phi_sigma.coeff(2);
        const double b1 = m.phi_epsilon.coeff(0), b2 = m.phi_epsilon.coeff(1),
                     b3 = m.phi_epsilon.coeff(2);
        for (double rho : rhos) {
            const double lit =
                a1 * b1 * std::sin((al - mu) * kPi) +
                a1 * b2 * std::pow(rho, al - be) * std::sin((2 * al - be - mu) * kPi) +
                a1 * b3 * std::pow(rho, al + ga) * std::sin((2 * al + ga - mu) * kPi) +
                a2 * b1 * std::pow(rho, mu + nu) * std::sin((al - 2 * mu - nu) * kPi) +
                a2 * b2 * std::pow(rho, al - be + mu + nu) *
                    std::sin((2 * al - be - 2 * mu - nu) * kPi) +
                a2 * b3 * std::pow(rho, al + ga + mu + nu) *
                    std::sin((2 * al + ga - 2 * mu - nu) * kPi) -
                a3 * b1 * std::pow(rho, al + ga) * std::sin((mu + ga) * kPi) +
                a3 * b2 * std::pow(rho, 2 * al - be + ga) *
                    std::sin((al - be - ga - mu) * kPi) +
                a3 * b3 * std::pow(rho, 2 * (al + ga)) * std::sin((al - mu) * kPi);
            CHECK(k_closed_form(m, rho) == Approx(lit).margin(1e-12 * k_scale(m, rho)));
        }
    }
    SECTION("half-integer exponent family") {
        std::mt19937_64 rng(102);
        const ModelSpec m = azvsupport::sample_narrowed_ok(ModelCode::IpID_IpID, rng);
        const double al = *m.orders.alpha, ga = *m.orders.gamma, mu = *m.orders.mu;
        const double H = (1.0 + al + ga) / 2.0;
        const double a1 = m.phi_sigma.coeff(0), a2 = m.phi_sigma.coeff(1),
                     a3 = m.phi_sigma.coeff(2);
        const double b1 = m.phi_epsilon.coeff(0), b2 = m.phi_epsilon.coeff(1),
                     b3 = m.phi_epsilon.coeff(2);
        for (double rho : rhos) {
            const double lit =
                a1 * b1 * std::sin((al - mu) * kPi) +
                a1 * b2 * std::pow(rho, H) * std::sin((1 + 3 * al + ga - 2 * mu) * kPi / 2) +
                a1 * b3 * std::pow(rho, 2 * H) * std::sin((1 + 2 * al + ga - mu) * kPi) -
                a2 * b1 * std::pow(rho, H) * std::sin((1 - al + ga + 2 * mu) * kPi / 2) +
                a2 * b2 * std::pow(rho, 2 * H) * std::sin((al - mu) * kPi) +
                a2 * b3 * std::pow(rho, 3 * H) * std::sin((1 + 3 * al + ga - 2 * mu) * kPi / 2) -
                a3 * b1 * std::pow(rho, 2 * H) * std::sin((1 + ga + mu) * kPi) -
                a3 * b2 * std::pow(rho, 3 * H) * std::sin((1 - al + ga + 2 * mu) * kPi / 2) +
                a3 * b3 * std::pow(rho, 4 * H) * std::sin((al - mu) * kPi);
            CHECK(k_closed_form(m, rho) == Approx(lit).margin(1e-12 * k_scale(m, rho)));
        }
    }
    SECTION("two-by-three family") {
        std::mt19937_64 rng(103);
        const ModelSpec m = azvsupport::sample_narrowed_ok(ModelCode::ID_DDDp, rng);
        const double al = *m.orders.alpha, be = *m.orders.beta, mu = *m.orders.mu,
                     nu = *m.orders.nu;
        const double a1 = m.phi_sigma.coeff(0), a2 = m.phi_sigma.coeff(1);
        const double b1 = m.phi_epsilon.coeff(0), b2 = m.phi_epsilon.coeff(1),
                     b3 = m.phi_epsilon.coeff(2);
        for (double rho : rhos) {
            const double lit =
                a1 * b1 * std::sin((al + mu) * kPi) +
                a1 * b2 * std::pow(rho, nu - mu) * std::sin((al + nu) * kPi) +
                a1 * b3 * std::pow(rho, al + be + nu - mu) *
                    std::sin((2 * al + be + nu) * kPi) +
                a2 * b1 * std::pow(rho, al + be) * std::sin((mu - be) * kPi) +
                a2 * b2 * std::pow(rho, al + be + nu - mu) * std::sin((nu - be) * kPi) +
                a2 * b3 * std::pow(rho, 2 * al + 2 * be + nu - mu) *
                    std::sin((al + nu) * kPi);
            CHECK(k_closed_form(m, rho) == Approx(lit).margin(1e-12 * k_scale(m, rho)));
        }
    }
    SECTION("family with a vanishing cross term") {
        std::mt19937_64 rng(104);
        const ModelSpec m = azvsupport::sample_narrowed_ok(ModelCode::IDD_DDp, rng);
        const double al = *m.orders.alpha, be = *m.orders.beta, mu = *m.orders.mu;
        const double a1 = m.phi_sigma.coeff(0), a2 = m.phi_sigma.coeff(1),
                     a3 = m.phi_sigma.coeff(2);
        const double b1 = m.phi_epsilon.coeff(0), b2 = m.phi_epsilon.coeff(1);
        for (double rho : rhos) {
            const double lit =
                a1 * b1 * std::sin((al + mu) * kPi) +
                a1 * b2 * std::pow(rho, al + be) * std::sin((2 * al + be + mu) * kPi) +
                a2 * b1 * std::pow(rho, al + be) * std::sin((mu - be) * kPi) +
                a2 * b2 * std::pow(rho, 2 * (al + be)) * std::sin((al + mu) * kPi) +
                a3 * b2 * std::pow(rho, 2 * al + be + mu) * std::sin((al + be) * kPi);
            CHECK(k_closed_form(m, rho) == Approx(lit).margin(1e-12 * k_scale(m, rho)));
        }
    }
}

TEST_CASE("spectral weight equivalence across all families") {
    std::mt19937_64 rng(0xC0FFEE);
    for (ModelCode code : azvisco::kAllModelCodes) {
        INFO("family " << azvisco::to_string(code));
        for (int draw = 0; draw < 3; ++draw) {
            const ModelSpec m = azvsupport::sample_narrowed_ok(code, rng);
            for (int i = 0; i <= 100; ++i) {
                const double rho = std::pow(10.0, -4.0 + 8.0 * i / 100.0);
                const double kc = k_closed_form(m, rho);
                const double kg = k_generic(m, rho);
                const double scale = k_scale(m, rho);
                if (std::fabs(kc) > 1e-14 * scale) {
                    REQUIRE(kg == Approx(kc).epsilon(1e-10));
                } else {
                    REQUIRE(std::fabs(kg - kc) <= 1e-12 * scale);
                }
            }
        }
    }
}

TEST_CASE("NarrowedOK implies dissipativity and a clean scan") {
    std::mt19937_64 rng(0xBEEF01);
    for (ModelCode code : azvisco::kAllModelCodes) {
        INFO("family " << azvisco::to_string(code));
        for (int draw = 0; draw < 2; ++draw) {
            const ModelSpec m = azvsupport::sample_narrowed_ok(code, rng);
            REQUIRE(check_narrowed(m).overall == ConstraintOverall::NarrowedOK);
            REQUIRE(check_thermo(m).all_satisfied());
            REQUIRE(k_nonneg_scan(m).nonnegative);
        }
        const ModelSpec bad = azvsupport::sample_violating(code, rng);
        const auto scan = k_nonneg_scan(bad);
        REQUIRE_FALSE(scan.nonnegative);
        REQUIRE(scan.first_violation.has_value());
        CHECK(scan.first_violation->value < 0.0);
        CHECK(scan.first_violation->rho >= 1e-6);
        CHECK(scan.first_violation->rho <= 1e6);
    }
}

TEST_CASE("identical power sums give a nonnegative weight") {
    FractionalOrders o;
    o.alpha = 0.4;
    o.beta = 0.3;
    o.mu = 0.2;
    const ModelSpec m = build_model(ModelCode::ID_ID, o, {1.0, 2.0}, {1.0, 2.0});
    for (double rho : {1e-3, 0.1, 1.0, 7.0, 1e3}) {
        const auto phi = m.phi_sigma.eval_polar(rho, kPi);
        const double expected = std::sin(m.xi * kPi) * std::norm(phi);
        CHECK(k_closed_form(m, rho) == Approx(expected).epsilon(1e-12));
        CHECK(k_closed_form(m, rho) >= 0.0);
    }
    CHECK(k_nonneg_scan(m).nonnegative);
}

TEST_CASE("dissipativity failures are reported with both sides") {
    SECTION("order ordering violated") {
        FractionalOrders o;
        o.alpha = 0.3;
        o.beta = 0.4;
        o.mu = 0.35;  // exceeds alpha
        const ModelSpec m = build_model(ModelCode::ID_ID, o, {1.0, 2.0}, {0.5, 1.5});
        const ConstraintReport r = check_narrowed(m);
        CHECK(r.overall == ConstraintOverall::ThermoFail);
        const auto block = with_id(r, "TD-AZ-ID-ID-less-1");
        REQUIRE(block.size() == 4);
        CHECK(block[2]->lhs == Approx(0.35));
        CHECK(block[2]->rhs == Approx(0.3));
        CHECK_FALSE(block[2]->satisfied);
        // narrowed chains are not attempted after a dissipativity failure
        CHECK(with_id(r, "STD-ID.DD-2").empty());
    }
    SECTION("order sum below the admissible band") {
        FractionalOrders o;
        o.alpha = 0.2;
        o.beta = 0.1;
        o.mu = 0.2;  // alpha + beta + mu = 0.5 < 1
        const ModelSpec m = build_model(ModelCode::ID_DDp, o, {1.0, 1.0}, {1.0, 1.0});
        const ConstraintReport r = check_thermo(m);
        CHECK(r.overall == ConstraintOverall::ThermoFail);
        const auto block = with_id(r, "TD-AZ-ID-DD-over-1");
        REQUIRE(block.size() == 4);
        CHECK(block[0]->lhs == 1.0);
        CHECK(block[0]->rhs == Approx(0.5));
        CHECK_FALSE(block[0]->satisfied);
    }
}

TEST_CASE("guard failure yields NarrowedNotGuaranteeable") {
    FractionalOrders o;
    o.alpha = 0.48;
    o.beta = 0.5;
    o.mu = 0.44;  // 2*alpha + beta - mu = 1.02 leaves the usable band
    const ModelSpec m = build_model(ModelCode::ID_ID, o, {1.0, 1.0}, {0.5, 1.0});
    REQUIRE(check_thermo(m).all_satisfied());
    const ConstraintReport r = check_narrowed(m);
    CHECK(r.overall == ConstraintOverall::NarrowedNotGuaranteeable);
    CHECK(r.failed_guard == "2 alpha + beta - mu in [alpha, 1)");
    const auto guard = with_id(r, "STD-ID.DD-guard");
    REQUIRE(guard.size() == 2);
    CHECK(guard[0]->satisfied);       // alpha <= 2*alpha + beta - mu
    CHECK_FALSE(guard[1]->satisfied); // 2*alpha + beta - mu < 1
    // the chain is still evaluated and listed truthfully
    CHECK(with_id(r, "STD-ID.DD-2").size() == 3);
}

TEST_CASE("nonnegativity scan flags the conjugate-pair row at its smallest violation") {
    const auto scan = k_nonneg_scan(case_pair());
    REQUIRE_FALSE(scan.nonnegative);
    REQUIRE(scan.first_violation.has_value());
    const double rho_v = scan.first_violation->rho;
    CHECK(scan.first_violation->value < 0.0);
    // the weight really is negative there, by a margin far above roundoff
    const ModelSpec m = case_pair();
    CHECK(scan.first_violation->value < -1e-6 * k_term_scale(m, rho_v));
    // every grid point below the reported one clears the per-point tolerance
    for (int i = 0; i <= 240; ++i) {
        const double rho = std::pow(10.0, -6.0 + 12.0 * i / 240.0);
        if (rho < rho_v * (1.0 - 1e-12))
            CHECK(k_closed_form(m, rho) >= -1e-12 * k_term_scale(m, rho));
    }
    // the smooth row passes the same scan
    CHECK(k_nonneg_scan(case_smooth()).nonnegative);
}

TEST_CASE("scan grid contract") {
    const ModelSpec m = case_smooth();
    SECTION("default grid satisfies the span and density floor") {
        const auto res = k_nonneg_scan(m, ScanGrid{});
        CHECK(res.nonnegative);
        CHECK(res.max_abs > 0.0);
    }
    SECTION("narrower or coarser grids are rejected") {
        CHECK_THROWS_AS(k_nonneg_scan(m, ScanGrid{1e-5, 1e6, 20}), azvisco::Error);
        CHECK_THROWS_AS(k_nonneg_scan(m, ScanGrid{1e-6, 1e5, 20}), azvisco::Error);
        CHECK_THROWS_AS(k_nonneg_scan(m, ScanGrid{1e-6, 1e6, 5}), azvisco::Error);
    }
    SECTION("denser and wider grids are accepted") {
        const auto res = k_nonneg_scan(m, ScanGrid{1e-7, 1e7, 40});
        CHECK(res.nonnegative);
    }
}

TEST_CASE("narrowed report identifiers per family") {
    std::mt19937_64 rng(0xA11CE);
    struct Expect {
        ModelCode code;
        const char* id;
        std::size_t count;
    };
    const std::vector<Expect> table = {
        {ModelCode::ID_ID, "STD-ID.DD-2", 3},
        {ModelCode::ID_DDp, "STD-ID.DD+-2", 2},
        {ModelCode::IID_IID, "STD-IID.IID-2", 3},
        {ModelCode::IID_IID, "STD-IID.IID-3", 3},
        {ModelCode::IDD_IDD, "STD-IDD.IDD-3", 3},
        {ModelCode::IID_IDD, "STD-IID.IDD-2", 9},
        {ModelCode::IID_IDD, "STD-IID.IDD-3", 3},
        {ModelCode::IpID_IpID, "STD-I+ID.I+ID-2.1", 2},
        {ModelCode::IpID_IpID, "STD-I+ID.I+ID-7", 1},
        {ModelCode::IpID_IpID, "STD-I+ID.I+ID-8", 1},
        {ModelCode::IDDp_IDDp, "STD-IDD+.IDD+-2a", 2},
        {ModelCode::IDDp_IDDp, "STD-IDD+.IDD+-5", 1},
        {ModelCode::IpID_IDDp, "STD-frale-over-less-less-over-2", 2},
        {ModelCode::IpID_IDDp, "STD-frale-over-less-less-over-4", 1},
        {ModelCode::IID_ID, "STD-IID.ID-2", 2},
        {ModelCode::IDD_DDp, "STD-IDD.DD+-2", 2},
        {ModelCode::IpID_ID, "STD-I+ID.ID-3", 2},
        {ModelCode::IDDp_DDp, "STD-IDD+.DD+-guard", 1},
        {ModelCode::ID_IDD, "STD-ID.IDD-2", 3},
        {ModelCode::ID_DDDp, "STD-ID.DDD+-2", 2},
        {ModelCode::ID_IDDp, "STD-ID.IDD+-3", 2},
    };
    for (ModelCode code : azvisco::kAllModelCodes) {
        const ModelSpec m = azvsupport::sample_narrowed_ok(code, rng);
        const ConstraintReport r = check_narrowed(m);
        INFO("family " << azvisco::to_string(code));
        REQUIRE(r.overall == ConstraintOverall::NarrowedOK);
        for (const auto& e : table) {
            if (e.code != code) continue;
            INFO("identifier " << e.id);
            CHECK(with_id(r, e.id).size() == e.count);
        }
        for (const auto& c : r.checks) CHECK_FALSE(c.identifier.empty());
    }
}

TEST_CASE("sampler determinism") {
    std::mt19937_64 g1(42), g2(42);
    const ModelSpec m1 = azvsupport::sample_narrowed_ok(ModelCode::IDD_IDD, g1);
    const ModelSpec m2 = azvsupport::sample_narrowed_ok(ModelCode::IDD_IDD, g2);
    REQUIRE(m1.phi_sigma.size() == m2.phi_sigma.size());
    for (std::size_t i = 0; i < m1.phi_sigma.size(); ++i) {
        CHECK(m1.phi_sigma.coeff(i) == m2.phi_sigma.coeff(i));
        CHECK(m1.phi_sigma.exponent(i) == m2.phi_sigma.exponent(i));
    }
    for (std::size_t i = 0; i < m1.phi_epsilon.size(); ++i)
        CHECK(m1.phi_epsilon.coeff(i) == m2.phi_epsilon.coeff(i));
}
