#pragma once
/**
 * @file mittag_leffler.hpp
 * @brief Two-parameter Mittag-Leffler function E_{xi,zeta}(z) and the kernel
 *        e_{xi,zeta,lam}(t) = t^{zeta-1} E_{xi,zeta}(-lam t^xi).
 *
 * Evaluation strategy for E_{xi,zeta}(z):
 *   - power series  sum_n z^n / Gamma(xi n + zeta)  whenever |z| <= 5 AND the
 *     alternating cancellation stays harmless (largest term <= 1e8 * |sum|;
 *     the sum is accumulated in long double, so that still leaves ~1e-11
 *     relative accuracy);
 *   - otherwise, for z < 0 and xi in (0,1), the integral representation of
 *     e_{xi,zeta,lam} at t = 1 with lam = |z|, reached through the recurrence
 *         E_{xi,zeta+xi}(z) = (E_{xi,zeta}(z) - 1/Gamma(zeta)) / z
 *     which steps zeta down into the representation's validity window
 *     zeta < 1 + xi and unwinds by dividing by z (a contraction for |z| > 1,
 *     so the unwind is numerically stable);
 *   - anything else (xi >= 1 with a hopelessly cancelling argument) is
 *     refused with Divergence rather than returning noise.
 *
 * Only real arguments are supported; every use in this library is z = -lam t^xi.
 */

#include <cmath>
#include <limits>
#include <string>

#include "azvisco/errors.hpp"
#include "azvisco/quadrature.hpp"

namespace azvisco {

namespace detail {
inline constexpr double kPiML = 3.14159265358979323846;
inline constexpr long double kPiMLl = 3.141592653589793238462643383279502884L;

/// sin(pi*x) with argument reduction at the integers, so the zeros are exact.
inline long double sinpi_l(long double x) {
    const long double n = std::nearbyint(x);
    const long double r = x - n;  // |r| <= 1/2, exact (Sterbenz near integers)
    const long double s = std::sin(kPiMLl * r);
    return (static_cast<long long>(n) % 2 == 0) ? s : -s;
}
}  // namespace detail

/**
 * Reciprocal gamma 1/Gamma(x) — entire, vanishing at the non-positive
 * integers.  For x > 0.5 this is 1/tgamma (which cleanly underflows to 0 when
 * Gamma overflows); for x <= 0.5 the reflection formula
 *     1/Gamma(x) = sin(pi x) Gamma(1-x) / pi
 * avoids evaluating Gamma near its poles.
 */
inline double rgamma(double x) {
    if (x > 0.5) return static_cast<double>(1.0L / std::tgamma(static_cast<long double>(x)));
    if (x == std::floor(x)) return 0.0;  // non-positive integer: exact zero
    const long double xl = static_cast<long double>(x);
    return static_cast<double>(detail::sinpi_l(xl) * std::tgamma(1.0L - xl) / detail::kPiMLl);
}

namespace detail {

struct MLSeriesOut {
    double value = 0.0;
    bool converged = false;
    double cancellation = 0.0;  // max |term| / |sum|
};

inline long double rgamma_l(long double x) {
    if (x > 0.5L) return 1.0L / std::tgamma(x);
    if (x == std::floor(x)) return 0.0L;
    return sinpi_l(x) * std::tgamma(1.0L - x) / kPiMLl;
}

/// Truncated power series with compensated long-double accumulation.
inline MLSeriesOut ml_series(double xi, double zeta, double z) {
    const int kBudget = 2000;
    const long double zl = static_cast<long double>(z);
    long double sum = 0.0L, comp = 0.0L, zpow = 1.0L, max_term = 0.0L;
    int quiet = 0;
    MLSeriesOut out;
    for (int n = 0; n <= kBudget; ++n) {
        const long double x = static_cast<long double>(xi) * n + static_cast<long double>(zeta);
        const long double term = zpow * rgamma_l(x);
        const long double y = term - comp;
        const long double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (std::fabs(term) > max_term) max_term = std::fabs(term);
        // stop after two consecutive negligible terms, but only once the
        // gamma argument has passed its minimum (terms decay for good then)
        if (x >= 2.0L && std::fabs(term) <= 1e-19L * std::fabs(sum) + 1e-300L) {
            if (++quiet >= 2) {
                out.converged = true;
                break;
            }
        } else {
            quiet = 0;
        }
        zpow *= zl;
        if (!std::isfinite(static_cast<double>(sum))) break;
    }
    out.value = static_cast<double>(sum);
    out.cancellation =
        (sum != 0.0L) ? static_cast<double>(max_term / std::fabs(sum))
                      : (max_term > 0.0L ? std::numeric_limits<double>::infinity() : 0.0);
    if (!std::isfinite(out.value)) out.converged = false;
    return out;
}

}  // namespace detail

/**
 * Integral representation of e_{xi,zeta,lam}(t), valid for xi in (0,1) and
 * zeta < 1 + xi (strict; the boundary is rejected):
 *
 *   e(t) = (1/pi) Int_0^inf  [lam sin((zeta-xi)pi) + rho^xi sin(zeta pi)]
 *                            / |rho^xi e^{i xi pi} + lam|^2
 *                            * rho^{xi-zeta} e^{-rho t}  d rho.
 *
 * For lam = 0 the integrand reduces to sin(zeta pi)/pi * rho^{-zeta} e^{-rho t},
 * integrable only for zeta < 1 (also enforced).
 */
inline double ml_e_integral(double xi, double zeta, double lam, double t,
                            const QuadSpec& spec = {}) {
    if (!(xi > 0.0) || !(xi < 1.0))
        throw Error(ErrorCode::ParameterWindow,
                    "integral representation requires xi in (0,1), got xi=" + std::to_string(xi));
    if (!(zeta < 1.0 + xi - 1e-12))
        throw Error(ErrorCode::ParameterWindow,
                    "integral representation requires zeta < 1 + xi, got zeta=" +
                        std::to_string(zeta) + ", xi=" + std::to_string(xi));
    if (!(lam >= 0.0))
        throw Error(ErrorCode::ParameterWindow, "lam must be nonnegative");
    if (!(t > 0.0)) throw Error(ErrorCode::ZeroArgument, "t must be positive");

    const double s1 = std::sin((zeta - xi) * detail::kPiML);
    const double s2 = std::sin(zeta * detail::kPiML);
    const double c = std::cos(xi * detail::kPiML);
    const double s = std::sin(xi * detail::kPiML);

    if (lam == 0.0) {
        if (!(zeta < 1.0 - 1e-12))
            throw Error(ErrorCode::ParameterWindow,
                        "integral representation with lam = 0 requires zeta < 1");
        if (s2 == 0.0) return 0.0;  // zeta at a non-positive integer: kernel is 0
        auto f = [&](double rho) { return s2 * std::pow(rho, -zeta) * std::exp(-rho * t); };
        const double head_c = (-zeta < 0.0) ? -zeta : 0.0;
        const QuadResult r = integrate_semi_infinite(f, t, spec, head_c, true);
        require_converged(r, "Mittag-Leffler integral representation (lam = 0)");
        return r.value / detail::kPiML;
    }

    auto f = [&](double rho) {
        const double rx = std::pow(rho, xi);
        const double re = rx * c + lam;
        const double im = rx * s;
        const double num = lam * s1 + rx * s2;
        return num / (re * re + im * im) * std::pow(rho, xi - zeta) * std::exp(-rho * t);
    };
    // endpoint behavior: rho^{xi-zeta} when the lam*sin((zeta-xi)pi) term
    // survives, otherwise the numerator contributes an extra rho^xi
    double head_c = (std::fabs(s1) > 1e-14) ? (xi - zeta) : (2.0 * xi - zeta);
    if (head_c >= 0.0) head_c = 0.0;
    const QuadResult r = integrate_semi_infinite(f, t, spec, head_c, true);
    require_converged(r, "Mittag-Leffler integral representation");
    return r.value / detail::kPiML;
}

/**
 * Two-parameter Mittag-Leffler function E_{xi,zeta}(z), real arguments.
 * Series inside |z| <= 5 while the cancellation allows ~1e-11 accuracy;
 * negative arguments outside that are routed through the integral
 * representation (with the zeta-recurrence when zeta >= 1 + xi).
 */
inline double ml_E(double xi, double zeta, double z) {
    if (!(xi > 0.0) || !std::isfinite(xi) || !std::isfinite(zeta) || !std::isfinite(z))
        throw Error(ErrorCode::ExponentOutOfRange, "ml_E requires finite parameters and xi > 0");

    const bool small_arg = std::fabs(z) <= 5.0;
    if (small_arg) {
        const detail::MLSeriesOut s = detail::ml_series(xi, zeta, z);
        if (s.converged && s.cancellation <= 1e8) return s.value;
    }
    if (z < 0.0 && xi < 1.0) {
        // step zeta into the integral representation's window, evaluate, unwind
        double zl = zeta;
        int k = 0;
        while (zl >= 1.0 + xi - 1e-10 && k < 256) {
            zl -= xi;
            ++k;
        }
        if (k >= 256)
            throw Error(ErrorCode::Divergence, "zeta-recurrence did not reach the window");
        double E = ml_e_integral(xi, zl, -z, 1.0);  // e_{xi,zl,|z|}(1) = E_{xi,zl}(z)
        for (int i = 0; i < k; ++i) {
            E = (E - rgamma(zl)) / z;
            zl += xi;
        }
        return E;
    }
    if (!small_arg) {
        // no integral alternative (xi >= 1 or z > 0): the guarded series is
        // still fine while the gamma growth outruns the cancellation
        const detail::MLSeriesOut s = detail::ml_series(xi, zeta, z);
        if (s.converged && s.cancellation <= 1e8) return s.value;
    }
    throw Error(ErrorCode::Divergence,
                "Mittag-Leffler series lost convergence (xi=" + std::to_string(xi) +
                    ", zeta=" + std::to_string(zeta) + ", z=" + std::to_string(z) +
                    ") and no integral alternative applies");
}

/// Kernel e_{xi,zeta,lam}(t) = t^{zeta-1} E_{xi,zeta}(-lam t^xi), t > 0.
inline double ml_e(double xi, double zeta, double lam, double t) {
    if (!(t > 0.0)) throw Error(ErrorCode::ZeroArgument, "ml_e requires t > 0");
    if (!(lam >= 0.0)) throw Error(ErrorCode::ParameterWindow, "ml_e requires lam >= 0");
    return std::pow(t, zeta - 1.0) * ml_E(xi, zeta, -lam * std::pow(t, xi));
}

/// Laplace image s^{xi-zeta}/(s^xi + lam) of e_{xi,zeta,lam} — oracle target.
inline double ml_laplace_check(double xi, double zeta, double lam, double s) {
    if (!(s > 0.0)) throw Error(ErrorCode::ZeroArgument, "ml_laplace_check requires s > 0");
    return std::pow(s, xi - zeta) / (std::pow(s, xi) + lam);
}

}  // namespace azvisco
