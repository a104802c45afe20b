#pragma once
/**
 * @file response.hpp
 * @brief Time-domain relaxation modulus and creep compliance.
 *
 * The two response functions are Laplace inversions of
 *
 *     relaxation   sigma~(s) = s^{xi-1} phi_eps(s) / phi_sig(s),
 *     creep        eps~(s)   = s^{-(1+xi)} phi_sig(s) / phi_eps(s),
 *
 * with the principal branch of s^p (arg s in (-pi, pi]).  Both images are
 * analytic off the negative real axis apart from possible zeros of their
 * denominator, so the Bromwich contour collapses onto the branch cut plus
 * residue contributions:
 *
 *   - "NP": the cut integral, present for every parameter set.  Writing
 *     s = rho e^{i pi} on the upper edge and using the spectral weight
 *         K(rho) = Im( e^{i xi pi} phi_eps(rho e^{i pi})
 *                      conj(phi_sig(rho e^{i pi})) )
 *     (the same function the dissipativity scan monitors),
 *
 *         sigma_NP(t) = (1/pi) int_0^inf rho^{xi-1}
 *                           K(rho) / |phi_sig(rho e^{i pi})|^2  e^{-rho t} drho,
 *         eps_NP(t)   = (1/pi) int_0^inf rho^{-(1+xi)}
 *                           K(rho) / |phi_eps(rho e^{i pi})|^2  (1 - e^{-rho t}) drho.
 *
 *   - "RP": a zero of the denominator on the negative real axis adds a real
 *     exponential mode; the cut integral is then taken in the principal-value
 *     sense (the symmetric limit across the ray zero).
 *
 *   - "CCP": a conjugate pair of zeros inside the sheet adds a damped cosine.
 *
 * Next to the integral forms the module provides the Mittag-Leffler sum
 * representations (available when the relevant denominator has exactly two
 * power terms) and, for the stress-side shape {1, s^P, s^{2P}} against
 * strain-side {1, s^P}, a "stable split" of the creep compliance that peels
 * the short-time power growth off analytically.  All representations of the
 * same response agree to quadrature accuracy; the tests cross-check them
 * against an independent fixed-contour inversion.
 *
 * Everything here requires the pure-power order xi in (0, 1).  The catalog
 * deliberately accepts models outside that window (the dissipativity checks
 * need to report on them), but the inversion formulas above lose their
 * meaning there: for xi >= 1 the creep head rho^{-(1+xi)} (1 - e^{-rho t})
 * ceases to be integrable at the origin, and the relaxation head rho^{xi-1}
 * stops being singular in the way the asymptotic matching assumes.  Entry
 * points throw ExponentOutOfRange instead of returning garbage.
 */

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "azvisco/constraints.hpp"
#include "azvisco/errors.hpp"
#include "azvisco/mittag_leffler.hpp"
#include "azvisco/models.hpp"
#include "azvisco/poles.hpp"
#include "azvisco/power_sum.hpp"
#include "azvisco/quadrature.hpp"

namespace azvisco {

/// Which representation produced a response curve.
enum class ResponseMethod { Integral, MittagLeffler, StableSplit };

inline const char* to_string(ResponseMethod m) {
    switch (m) {
        case ResponseMethod::Integral: return "integral";
        case ResponseMethod::MittagLeffler: return "ml";
        case ResponseMethod::StableSplit: return "stable";
    }
    return "?";
}

/**
 * A sampled response function.  For the integral representation
 * values[i] == np_values[i] + branch_values[i] holds bitwise: the branch
 * column carries the RP / CCP residue contribution and is identically zero
 * for NoPoles.  The sum and ML / stable-split representations populate
 * np_values with the full value and leave branch_values at zero, so the
 * identity holds for every method.
 */
struct ResponseCurve {
    std::vector<double> times;
    std::vector<double> values;
    std::vector<double> np_values;
    std::vector<double> branch_values;
    PoleClassification classification;  // of the relevant denominator
    ResponseMethod method = ResponseMethod::Integral;
};

namespace detail {

inline constexpr double kPiR = 3.141592653589793238462643383279502884;

inline void require_response_xi(const ModelSpec& m, const char* what) {
    if (!(m.xi > 0.0 && m.xi < 1.0))
        throw Error(ErrorCode::ExponentOutOfRange,
                    std::string(what) + " needs the pure-power order xi in (0, 1); this model has xi = " +
                        std::to_string(m.xi));
}

inline void require_response_time(double t) {
    if (!(t > 0.0) || !std::isfinite(t))
        throw Error(ErrorCode::ZeroArgument, "response evaluation needs a strictly positive time");
}

/// |d phi / ds| magnitude scale at radius rho (sum of term magnitudes), used
/// to decide when a residue denominator is "numerically zero".
inline double derivative_scale(const PowerSum& f, double rho) {
    double s = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        const double p = f.exponent(k);
        if (p == 0.0) continue;
        s += f.coeff(k) * p * std::pow(rho, p - 1.0);
    }
    return s;
}

/// d phi / ds at the pole location, with a vanishing-derivative guard: the
/// residue formulas divide by this, and a (near-)double zero means the simple
/// pole assumption behind them is broken.
inline std::complex<double> residue_denominator(const PowerSum& f, double rho, double ang,
                                                const char* what) {
    const std::complex<double> d = f.derivative().eval_polar(rho, ang);
    if (!(std::abs(d) > 1e-12 * derivative_scale(f, rho)))
        throw Error(ErrorCode::DerivativeVanishes,
                    std::string(what) + ": the denominator's derivative vanishes at the pole "
                                        "(double zero) so the simple-pole residue form does not apply");
    return d;
}

}  // namespace detail

// --------------------------------------------------------------------------
// relaxation: cut integral and residue branches
// --------------------------------------------------------------------------

/**
 * Cut-integral ("NP") part of the relaxation modulus at time t.  When the
 * classification reports a negative real pole the integral is the principal
 * value across it; the CCP dip in |phi_sig|^2 needs no special treatment
 * beyond adaptivity.
 */
inline double relaxation_np(const ModelSpec& m, double t, const PoleClassification& cls,
                            const QuadSpec& spec = {}) {
    detail::require_response_xi(m, "the relaxation modulus");
    detail::require_response_time(t);
    auto f = [&](double rho) {
        return std::pow(rho, m.xi - 1.0) * k_closed_form(m, rho) /
               std::norm(m.phi_sigma.eval_polar(rho, detail::kPiR)) * std::exp(-rho * t) /
               detail::kPiR;
    };
    const QuadResult r =
        (cls.kind == PoleKind::NegativeRealPole)
            ? integrate_principal_value(f, *cls.rho, t, spec, m.xi - 1.0, true)
            : integrate_semi_infinite(f, t, spec, m.xi - 1.0, true);
    return require_converged(r, "relaxation cut integral").value;
}

inline double relaxation_np(const ModelSpec& m, double t) {
    return relaxation_np(m, t, classify(m.phi_sigma));
}

namespace detail {

/// k-th time derivative of the RP branch of the relaxation modulus:
///     sigma_RP(t) = -rho^{xi-1} |phi_eps(s)| / |phi_sig'(s)|
///                   cos(arg phi_eps(s) - arg phi_sig'(s) + xi pi) e^{-rho t}
/// at s = rho e^{i pi}; each derivative multiplies by -rho.
inline double relaxation_rp_deriv(const ModelSpec& m, const PoleClassification& cls, double t,
                                  int k) {
    if (cls.kind != PoleKind::NegativeRealPole || !cls.rho)
        throw Error(ErrorCode::UsageError,
                    "the RP branch needs a negative-real-pole classification");
    const double rho = *cls.rho;
    const std::complex<double> num = m.phi_epsilon.eval_polar(rho, kPiR);
    const std::complex<double> den =
        residue_denominator(m.phi_sigma, rho, kPiR, "relaxation RP branch");
    const double phase = std::arg(num) - std::arg(den) + m.xi * kPiR;
    const double base = -std::pow(rho, m.xi - 1.0) * std::abs(num) / std::abs(den) *
                        std::cos(phase) * std::exp(-rho * t);
    return std::pow(-rho, static_cast<double>(k)) * base;
}

/// k-th time derivative of the CCP branch
///     sigma_CCP(t) = 2 rho^{xi-1} |phi_eps(s)| / |phi_sig'(s)|
///                    e^{-|Re s| t} cos(Im(s) t + psi),
///     psi = arg phi_eps(s) - arg phi_sig'(s) - (1 - xi) phi,
/// at s = rho e^{i phi}.  Differentiation multiplies the underlying complex
/// amplitude by s, i.e. scales by rho and advances the phase by phi.
inline double relaxation_ccp_deriv(const ModelSpec& m, const PoleClassification& cls, double t,
                                   int k) {
    if (cls.kind != PoleKind::ComplexConjugatePair || !cls.rho || !cls.phi)
        throw Error(ErrorCode::UsageError,
                    "the CCP branch needs a complex-conjugate-pair classification");
    const double rho = *cls.rho, ang = *cls.phi;
    const std::complex<double> num = m.phi_epsilon.eval_polar(rho, ang);
    const std::complex<double> den =
        residue_denominator(m.phi_sigma, rho, ang, "relaxation CCP branch");
    const double amp = 2.0 * std::pow(rho, m.xi - 1.0 + k) * std::abs(num) / std::abs(den);
    const double decay = -rho * std::cos(ang);  // = |Re s| when the pair is stable
    const double omega = rho * std::sin(ang);
    const double psi = std::arg(num) - std::arg(den) - (1.0 - m.xi) * ang + k * ang;
    return amp * std::exp(-decay * t) * std::cos(omega * t + psi);
}

}  // namespace detail

/// Exponential ("RP") residue branch of the relaxation modulus.
inline double relaxation_rp(const ModelSpec& m, const PoleClassification& cls, double t) {
    detail::require_response_xi(m, "the relaxation modulus");
    detail::require_response_time(t);
    return detail::relaxation_rp_deriv(m, cls, t, 0);
}

/// Damped-cosine ("CCP") residue branch of the relaxation modulus.
inline double relaxation_ccp(const ModelSpec& m, const PoleClassification& cls, double t) {
    detail::require_response_xi(m, "the relaxation modulus");
    detail::require_response_time(t);
    return detail::relaxation_ccp_deriv(m, cls, t, 0);
}

/// Full relaxation modulus at one time (integral representation).
inline double relaxation(const ModelSpec& m, double t) {
    const PoleClassification cls = classify(m.phi_sigma);
    double v = relaxation_np(m, t, cls);
    if (cls.kind == PoleKind::NegativeRealPole) v += relaxation_rp(m, cls, t);
    if (cls.kind == PoleKind::ComplexConjugatePair) v += relaxation_ccp(m, cls, t);
    return v;
}

/**
 * k-th time derivative (k = 1 or 2) of the relaxation modulus, integral
 * representation: the cut integrand gains a factor (-rho)^k (its head then
 * being regular), the RP branch a factor (-rho_RP)^k, and the CCP branch a
 * factor rho^k together with a phase advance k*phi.
 */
inline double relaxation_derivative(const ModelSpec& m, double t, int k,
                                    const QuadSpec& spec = {}) {
    detail::require_response_xi(m, "the relaxation modulus");
    detail::require_response_time(t);
    if (k < 1 || k > 2)
        throw Error(ErrorCode::UsageError, "relaxation_derivative supports orders 1 and 2");
    const PoleClassification cls = classify(m.phi_sigma);
    const double sign = (k == 1) ? -1.0 : 1.0;
    auto f = [&](double rho) {
        return sign * std::pow(rho, m.xi - 1.0 + k) * k_closed_form(m, rho) /
               std::norm(m.phi_sigma.eval_polar(rho, detail::kPiR)) * std::exp(-rho * t) /
               detail::kPiR;
    };
    const QuadResult r = (cls.kind == PoleKind::NegativeRealPole)
                             ? integrate_principal_value(f, *cls.rho, t, spec, 0.0, true)
                             : integrate_semi_infinite(f, t, spec, 0.0, true);
    double v = require_converged(r, "relaxation derivative cut integral").value;
    if (cls.kind == PoleKind::NegativeRealPole) v += detail::relaxation_rp_deriv(m, cls, t, k);
    if (cls.kind == PoleKind::ComplexConjugatePair)
        v += detail::relaxation_ccp_deriv(m, cls, t, k);
    return v;
}

/**
 * Mittag-Leffler sum form of the relaxation modulus, available when the
 * stress-side polynomial has exactly two power terms a_1 + a_2 s^P: each
 * strain-side term b_k s^{q_k} then contributes
 *     (b_k / a_2) e_{P, 1 - xi + P - q_k}(t; a_1/a_2),
 * e being the kernel t^{zeta-1} E_{P,zeta}(-lam t^P).
 */
inline double relaxation_ml(const ModelSpec& m, double t) {
    if (m.phi_sigma.size() != 2)
        throw Error(ErrorCode::WrongModelShape,
                    "the Mittag-Leffler relaxation form needs a two-term stress-side polynomial");
    detail::require_response_time(t);
    const double P = m.phi_sigma.top_exponent();
    const double lam = m.phi_sigma.coeff(0) / m.phi_sigma.coeff(1);
    double acc = 0.0;
    for (std::size_t k = 0; k < m.phi_epsilon.size(); ++k)
        acc += m.phi_epsilon.coeff(k) / m.phi_sigma.coeff(1) *
               ml_e(P, 1.0 - m.xi + P - m.phi_epsilon.exponent(k), lam, t);
    return acc;
}

// --------------------------------------------------------------------------
// creep: cut integral (t-independent tail split), residue branches, stable split
// --------------------------------------------------------------------------

namespace detail {

/**
 * int_0^inf f(rho) (1 - e^{-rho t}) drho for an integrand with an algebraic
 * head and an algebraic tail, assembled from
 *
 *   [0, S]    f * (1 - e^{-rho t})   (head substitution for f*kern ~ rho^{head_c})
 *   [S, inf)  int f  -  int f e^{-rho t}
 *
 * The first tail piece is t-independent and computed once: the reciprocal
 * substitution u = 1/rho turns it into a head integral over (0, 1/S] with
 * exponent s_tail - 1, which the w-substitution machinery integrates to full
 * precision.  No asymptotic completion is involved, so slowly decaying
 * spectra (s_tail near 0) cost nothing in accuracy.  The second piece is
 * exponentially damped.
 *
 * Two evaluators are supplied for the same spectrum: `small_f` carries
 * rho * f(rho) in plain ascending powers — the extra factor of rho keeps its
 * leading power above -1, so it stays inside double range even where the head
 * substitution probes rho as small as 1e-290 — and `big_f` carries f(rho)
 * itself with the leading powers of numerator and denominator cancelled so
 * only non-positive exponents remain (finite arbitrarily far out).  eval()
 * restores the kernel as (1 - e^{-rho t}) / rho, which tends to t at the
 * origin, so every factor it multiplies is finite.
 *
 * An optional ray pole (a negative real zero of the response denominator)
 * makes the [0, S] piece a principal value; S is then placed at the outer
 * window edge pole * 3/2.
 */
struct CutKernelIntegral {
    std::function<double(double)> small_f;  // rho * f(rho)
    std::function<double(double)> big_f;
    double S = 1.0;
    double head_c = 0.0;   // small_f * kernel ~ rho^{head_c} at the origin
    double s_tail = 1.0;   // big_f ~ rho^{-(1 + s_tail)} at infinity
    std::optional<double> pole;
    QuadSpec spec{};
    double t_independent_tail = 0.0;

    /// Integrate the t-independent tail; call once after the fields are set.
    void finalize() {
        auto u_integrand = [this](double u) {
            const double rho = 1.0 / u;
            return big_f(rho) * rho * rho;
        };
        t_independent_tail =
            require_converged(head_integral(u_integrand, 1.0 / S,
                                            (s_tail < 1.0) ? s_tail - 1.0 : 0.0, spec),
                              "cut-integral tail").value;
    }

    double eval(double t) const {
        auto full = [&](double rho) { return small_f(rho) * (-std::expm1(-rho * t) / rho); };
        double acc = t_independent_tail;
        if (pole) {
            const double delta = 0.5 * *pole;
            acc += require_converged(head_integral(full, *pole - delta, head_c, spec),
                                     "cut-integral head").value;
            acc += require_converged(pv_window(full, *pole, delta, spec),
                                     "cut-integral pole window").value;
        } else {
            acc += require_converged(head_integral(full, S, head_c, spec), "cut-integral head")
                       .value;
        }
        auto damped = [&](double rho) { return big_f(rho) * std::exp(-rho * t); };
        acc -= require_converged(tail_integral(damped, S, t, true, spec),
                                 "cut-integral damped tail").value;
        return acc;
    }
};

/// Short-time growth exponent of the compliance, xi - (p_top - q_top); it is
/// also the decay rate of the creep spectrum's tail.  Must be positive for
/// the creep integral to exist (zero glass compliance) — thermodynamically
/// admissible parameters always satisfy this.
inline double creep_tail_exponent(const ModelSpec& m) {
    return m.xi - (m.phi_sigma.top_exponent() - m.phi_epsilon.top_exponent());
}

/// Build the cut-integral engine for the creep compliance of model m.
inline CutKernelIntegral make_creep_cut(const ModelSpec& m, const PoleClassification& cls,
                                        const QuadSpec& spec) {
    require_response_xi(m, "the creep compliance");
    const double s_inf = creep_tail_exponent(m);
    if (!(s_inf > 0.0))
        throw Error(ErrorCode::Divergence,
                    "the creep cut integral diverges: xi - (p_top - q_top) = " +
                        std::to_string(s_inf) +
                        " must be positive (the glass compliance must vanish)");

    CutKernelIntegral ck;
    ck.spec = spec;
    ck.head_c = -m.xi;
    ck.s_tail = s_inf;
    if (cls.kind == PoleKind::NegativeRealPole && cls.rho) {
        ck.pole = *cls.rho;
        ck.S = 1.5 * *cls.rho;
    }

    ck.small_f = [m](double rho) {
        return std::pow(rho, -m.xi) * k_closed_form(m, rho) /
               std::norm(m.phi_epsilon.eval_polar(rho, kPiR)) / kPiR;
    };
    // Same function with the top powers of K and |phi_eps|^2 cancelled:
    //   f = rho^{-(1+s_inf)} Khat / |ehat|^2 / pi,
    //   Khat = sum_{j,k} a_j b_k rho^{(p_j - p_top) + (q_k - q_top)}
    //                    sin((xi + q_k - p_j) pi),
    //   ehat = sum_k b_k rho^{q_k - q_top} e^{i q_k pi};
    // every exponent is <= 0 so large rho only underflows harmlessly.
    ck.big_f = [m, s_inf](double rho) {
        const double p_top = m.phi_sigma.top_exponent();
        const double q_top = m.phi_epsilon.top_exponent();
        double khat = 0.0;
        for (std::size_t j = 0; j < m.phi_sigma.size(); ++j)
            for (std::size_t k = 0; k < m.phi_epsilon.size(); ++k)
                khat += m.phi_sigma.coeff(j) * m.phi_epsilon.coeff(k) *
                        std::pow(rho, (m.phi_sigma.exponent(j) - p_top) +
                                          (m.phi_epsilon.exponent(k) - q_top)) *
                        std::sin((m.xi + m.phi_epsilon.exponent(k) - m.phi_sigma.exponent(j)) *
                                 kPiR);
        std::complex<double> ehat{0.0, 0.0};
        for (std::size_t k = 0; k < m.phi_epsilon.size(); ++k) {
            const double q = m.phi_epsilon.exponent(k);
            ehat += m.phi_epsilon.coeff(k) * std::pow(rho, q - q_top) *
                    std::complex<double>(std::cos(q * kPiR), std::sin(q * kPiR));
        }
        return std::pow(rho, -(1.0 + s_inf)) * khat / std::norm(ehat) / kPiR;
    };
    ck.finalize();
    return ck;
}

/// k-th time derivative of the RP branch of the creep compliance:
///     eps_RP(t) = C (1 - e^{-rho t}),
///     C = rho^{-(1+xi)} |phi_sig(s)| / |phi_eps'(s)|
///         cos(arg phi_eps'(s) - arg phi_sig(s) + xi pi)
/// at s = rho e^{i pi} (note the reversed argument order — the derivative's
/// argument leads — and the opposite overall sign relative to the relaxation
/// branch: both are what the merging limit of the conjugate-pair branch
/// produces, and the contour oracle confirms them).
inline double creep_rp_deriv(const ModelSpec& m, const PoleClassification& cls, double t, int k) {
    if (cls.kind != PoleKind::NegativeRealPole || !cls.rho)
        throw Error(ErrorCode::UsageError,
                    "the RP branch needs a negative-real-pole classification");
    const double rho = *cls.rho;
    const std::complex<double> num = m.phi_sigma.eval_polar(rho, kPiR);
    const std::complex<double> den = residue_denominator(m.phi_epsilon, rho, kPiR, "creep RP branch");
    const double C = std::pow(rho, -(1.0 + m.xi)) * std::abs(num) / std::abs(den) *
                     std::cos(std::arg(den) - std::arg(num) + m.xi * kPiR);
    if (k == 0) return C * (-std::expm1(-rho * t));
    return C * std::pow(-rho, static_cast<double>(k)) * (-std::exp(-rho * t));
}

/// k-th time derivative of the CCP branch of the creep compliance:
///     eps_CCP(t) = D [ e^{-|Re s| t} cos(Im(s) t - X) - cos X ],
///     D = 2 rho^{-(1+xi)} |phi_sig(s)| / |phi_eps'(s)|,
///     X = arg phi_eps'(s) - arg phi_sig(s) + (1 + xi) phi,
/// at s = rho e^{i phi}; the branch vanishes at t = 0 by construction.
inline double creep_ccp_deriv(const ModelSpec& m, const PoleClassification& cls, double t, int k) {
    if (cls.kind != PoleKind::ComplexConjugatePair || !cls.rho || !cls.phi)
        throw Error(ErrorCode::UsageError,
                    "the CCP branch needs a complex-conjugate-pair classification");
    const double rho = *cls.rho, ang = *cls.phi;
    const std::complex<double> num = m.phi_sigma.eval_polar(rho, ang);
    const std::complex<double> den = residue_denominator(m.phi_epsilon, rho, ang, "creep CCP branch");
    const double D = 2.0 * std::pow(rho, -(1.0 + m.xi) + k) * std::abs(num) / std::abs(den);
    const double decay = -rho * std::cos(ang);
    const double omega = rho * std::sin(ang);
    const double X = std::arg(den) - std::arg(num) + (1.0 + m.xi) * ang;
    const double oscillating = D * std::exp(-decay * t) * std::cos(omega * t - X + k * ang);
    if (k == 0) return oscillating - D * std::cos(X);
    return oscillating;
}

}  // namespace detail

/// Cut-integral ("NP") part of the creep compliance at time t.
inline double creep_np(const ModelSpec& m, double t, const PoleClassification& cls,
                       const QuadSpec& spec = {}) {
    detail::require_response_time(t);
    return detail::make_creep_cut(m, cls, spec).eval(t);
}

inline double creep_np(const ModelSpec& m, double t) {
    return creep_np(m, t, classify(m.phi_epsilon));
}

/// Exponential ("RP") residue branch of the creep compliance.
inline double creep_rp(const ModelSpec& m, const PoleClassification& cls, double t) {
    detail::require_response_xi(m, "the creep compliance");
    detail::require_response_time(t);
    return detail::creep_rp_deriv(m, cls, t, 0);
}

/// Damped-cosine ("CCP") residue branch of the creep compliance.
inline double creep_ccp(const ModelSpec& m, const PoleClassification& cls, double t) {
    detail::require_response_xi(m, "the creep compliance");
    detail::require_response_time(t);
    return detail::creep_ccp_deriv(m, cls, t, 0);
}

/// Full creep compliance at one time (integral representation).
inline double creep(const ModelSpec& m, double t) {
    const PoleClassification cls = classify(m.phi_epsilon);
    double v = creep_np(m, t, cls);
    if (cls.kind == PoleKind::NegativeRealPole) v += creep_rp(m, cls, t);
    if (cls.kind == PoleKind::ComplexConjugatePair) v += creep_ccp(m, cls, t);
    return v;
}

/**
 * Creep rate d eps_cr / dt, integral representation: differentiating under
 * the integral turns the kernel into rho e^{-rho t}, so
 *     eps'_NP(t) = (1/pi) int_0^inf rho^{-xi}
 *                      K(rho) / |phi_eps(rho e^{i pi})|^2  e^{-rho t} drho
 * (now exponentially damped, no tail split needed), plus the differentiated
 * residue branches.
 */
inline double creep_rate(const ModelSpec& m, double t, const QuadSpec& spec = {}) {
    detail::require_response_xi(m, "the creep compliance");
    detail::require_response_time(t);
    const PoleClassification cls = classify(m.phi_epsilon);
    auto f = [&](double rho) {
        return std::pow(rho, -m.xi) * k_closed_form(m, rho) /
               std::norm(m.phi_epsilon.eval_polar(rho, detail::kPiR)) * std::exp(-rho * t) /
               detail::kPiR;
    };
    const QuadResult r = (cls.kind == PoleKind::NegativeRealPole)
                             ? integrate_principal_value(f, *cls.rho, t, spec, -m.xi, true)
                             : integrate_semi_infinite(f, t, spec, -m.xi, true);
    double v = require_converged(r, "creep rate cut integral").value;
    if (cls.kind == PoleKind::NegativeRealPole) v += detail::creep_rp_deriv(m, cls, t, 1);
    if (cls.kind == PoleKind::ComplexConjugatePair) v += detail::creep_ccp_deriv(m, cls, t, 1);
    return v;
}

/**
 * Mittag-Leffler sum form of the creep compliance, available when the
 * strain-side polynomial has exactly two power terms b_1 + b_2 s^Q: each
 * stress-side term a_k s^{p_k} contributes
 *     (a_k / b_2) e_{Q, 1 + xi + Q - p_k}(t; b_1/b_2).
 */
inline double creep_ml(const ModelSpec& m, double t) {
    if (m.phi_epsilon.size() != 2)
        throw Error(ErrorCode::WrongModelShape,
                    "the Mittag-Leffler creep form needs a two-term strain-side polynomial");
    detail::require_response_time(t);
    const double Q = m.phi_epsilon.top_exponent();
    const double lam = m.phi_epsilon.coeff(0) / m.phi_epsilon.coeff(1);
    double acc = 0.0;
    for (std::size_t k = 0; k < m.phi_sigma.size(); ++k)
        acc += m.phi_sigma.coeff(k) / m.phi_epsilon.coeff(1) *
               ml_e(Q, 1.0 + m.xi + Q - m.phi_sigma.exponent(k), lam, t);
    return acc;
}

namespace detail {

/**
 * Stable split of the creep compliance for the shape
 *     phi_sig = a_1 + a_2 s^P + a_3 s^{2P},   phi_eps = b_1 + b_2 s^P.
 * Polynomial division of phi_sig by phi_eps peels the short-time power
 * growth off in closed form,
 *
 *     eps_cr(t) = (a_3/b_2) t^{s_0} / Gamma(1 + s_0)
 *                 + (a_3/b_2)(a_2/a_3 - b_1/b_2) J(s_0; t)
 *                 + (a_1/b_2) J(xi; t),            s_0 = xi - P > 0,
 *
 * where J is the cut integral of s^{-(1+sigma)} / (s^P + r), r = b_1/b_2:
 *
 *     J(sigma; t) = (1/pi) int_0^inf rho^{-(1+sigma)}
 *                     [rho^P sin((P + sigma) pi) + r sin(sigma pi)]
 *                     / |rho^P e^{i P pi} + r|^2  (1 - e^{-rho t}) drho.
 *
 * Both J spectra decay like rho^{-(1 + sigma + P)} — much faster than the
 * unpeeled spectrum's rho^{-(1+s_0)} — which is what makes this form "stable"
 * at both time extremes.
 */
struct StableSplitEngine {
    double power_coeff = 0.0;  // (a_3/b_2) / Gamma(1 + s_0)
    double s0 = 0.0;
    double w_s0 = 0.0, w_xi = 0.0;
    CutKernelIntegral j_s0, j_xi;

    double eval(double t) const {
        return power_coeff * std::pow(t, s0) + w_s0 * j_s0.eval(t) + w_xi * j_xi.eval(t);
    }
};

inline CutKernelIntegral make_stable_piece(double P, double r, double sigma,
                                           const QuadSpec& spec) {
    CutKernelIntegral ck;
    ck.spec = spec;
    ck.head_c = -sigma;
    ck.s_tail = sigma + P;
    ck.S = 1.0;
    const double s_hi = std::sin((P + sigma) * kPiR);
    const double s_lo = std::sin(sigma * kPiR);
    const double cP = std::cos(P * kPiR);
    ck.small_f = [=](double rho) {
        const double x = std::pow(rho, P);
        return std::pow(rho, -sigma) * (x * s_hi + r * s_lo) /
               (x * x + 2.0 * x * r * cP + r * r) / kPiR;
    };
    ck.big_f = [=](double rho) {
        const double xi_ = std::pow(rho, -P);  // rho^{-P} <= 1 out here
        return std::pow(rho, -(1.0 + sigma + P)) * (s_hi + r * s_lo * xi_) /
               (1.0 + 2.0 * r * cP * xi_ + r * r * xi_ * xi_) / kPiR;
    };
    ck.finalize();
    return ck;
}

inline StableSplitEngine make_stable_split(const ModelSpec& m, const QuadSpec& spec) {
    require_response_xi(m, "the creep compliance");
    const bool shape_ok =
        m.phi_sigma.size() == 3 && m.phi_epsilon.size() == 2 &&
        std::fabs(m.phi_sigma.exponent(1) - m.phi_epsilon.top_exponent()) < 1e-12 &&
        std::fabs(m.phi_sigma.top_exponent() - 2.0 * m.phi_epsilon.top_exponent()) < 1e-12;
    if (!shape_ok)
        throw Error(ErrorCode::WrongModelShape,
                    "the stable split needs the stress side {1, s^P, s^{2P}} against the "
                    "strain side {1, s^P}");
    const double P = m.phi_epsilon.top_exponent();
    const double s0 = m.xi - P;
    if (!(s0 > 0.0))
        throw Error(ErrorCode::Divergence,
                    "the creep compliance has no zero short-time limit here: xi - P = " +
                        std::to_string(s0) + " must be positive");
    const double a1 = m.phi_sigma.coeff(0), a2 = m.phi_sigma.coeff(1), a3 = m.phi_sigma.coeff(2);
    const double b1 = m.phi_epsilon.coeff(0), b2 = m.phi_epsilon.coeff(1);
    const double r = b1 / b2;

    StableSplitEngine eng;
    eng.s0 = s0;
    eng.power_coeff = (a3 / b2) / std::tgamma(1.0 + s0);
    eng.w_s0 = (a3 / b2) * (a2 / a3 - b1 / b2);
    eng.w_xi = a1 / b2;
    eng.j_s0 = make_stable_piece(P, r, s0, spec);
    eng.j_xi = make_stable_piece(P, r, m.xi, spec);
    return eng;
}

}  // namespace detail

/// Stable-split form of the creep compliance at one time.
inline double creep_stable(const ModelSpec& m, double t, const QuadSpec& spec = {}) {
    detail::require_response_time(t);
    return detail::make_stable_split(m, spec).eval(t);
}

// --------------------------------------------------------------------------
// sampled curves
// --------------------------------------------------------------------------

namespace detail {

inline void require_curve_times(const std::vector<double>& times) {
    if (times.empty())
        throw Error(ErrorCode::UsageError, "a response curve needs at least one sample time");
    for (double t : times) require_response_time(t);
}

/// Evaluate `point(i)` for every index on `threads` threads.  Each index is
/// computed independently and written to its own slot, so the result is
/// bitwise identical for every thread count.
inline void parallel_fill(std::size_t n, int threads, const std::function<void(std::size_t)>& point) {
    const int nt = std::max(1, threads);
    if (nt == 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) point(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    const int workers = static_cast<int>(std::min<std::size_t>(n, static_cast<std::size_t>(nt)));
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&]() {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) point(i);
        });
    for (std::thread& th : pool) th.join();
}

}  // namespace detail

/**
 * Sampled relaxation modulus.  `method` nullopt selects the integral
 * representation; MittagLeffler needs the two-term stress side.  `threads`
 * parallelises over sample points without changing a single bit of output.
 */
inline ResponseCurve relaxation(const ModelSpec& m, const std::vector<double>& times,
                                std::optional<ResponseMethod> method = {}, int threads = 1,
                                const QuadSpec& spec = {}) {
    detail::require_curve_times(times);
    ResponseCurve out;
    out.times = times;
    out.classification = classify(m.phi_sigma);
    out.method = method.value_or(ResponseMethod::Integral);
    const std::size_t n = times.size();
    out.values.assign(n, 0.0);
    out.np_values.assign(n, 0.0);
    out.branch_values.assign(n, 0.0);

    switch (out.method) {
        case ResponseMethod::Integral: {
            detail::require_response_xi(m, "the relaxation modulus");
            const PoleClassification& cls = out.classification;
            detail::parallel_fill(n, threads, [&](std::size_t i) {
                const double t = times[i];
                out.np_values[i] = relaxation_np(m, t, cls, spec);
                if (cls.kind == PoleKind::NegativeRealPole)
                    out.branch_values[i] = detail::relaxation_rp_deriv(m, cls, t, 0);
                else if (cls.kind == PoleKind::ComplexConjugatePair)
                    out.branch_values[i] = detail::relaxation_ccp_deriv(m, cls, t, 0);
                out.values[i] = out.np_values[i] + out.branch_values[i];
            });
            break;
        }
        case ResponseMethod::MittagLeffler: {
            detail::parallel_fill(n, threads, [&](std::size_t i) {
                out.values[i] = relaxation_ml(m, times[i]);
                out.np_values[i] = out.values[i];
            });
            break;
        }
        case ResponseMethod::StableSplit:
            throw Error(ErrorCode::WrongModelShape,
                        "the stable split is a creep-compliance representation; the relaxation "
                        "modulus has no such form");
    }
    return out;
}

/**
 * Sampled creep compliance.  `method` nullopt selects the stable split for
 * the shape that has one (stress side {1, s^P, s^{2P}} with strain side
 * {1, s^P} — where the unpeeled spectrum decays slowest) and the integral
 * representation otherwise.
 */
inline ResponseCurve creep(const ModelSpec& m, const std::vector<double>& times,
                           std::optional<ResponseMethod> method = {}, int threads = 1,
                           const QuadSpec& spec = {}) {
    detail::require_curve_times(times);
    ResponseCurve out;
    out.times = times;
    out.classification = classify(m.phi_epsilon);
    if (method) {
        out.method = *method;
    } else {
        const bool split_shape =
            m.phi_sigma.size() == 3 && m.phi_epsilon.size() == 2 &&
            std::fabs(m.phi_sigma.exponent(1) - m.phi_epsilon.top_exponent()) < 1e-12 &&
            std::fabs(m.phi_sigma.top_exponent() - 2.0 * m.phi_epsilon.top_exponent()) < 1e-12;
        out.method = split_shape ? ResponseMethod::StableSplit : ResponseMethod::Integral;
    }
    const std::size_t n = times.size();
    out.values.assign(n, 0.0);
    out.np_values.assign(n, 0.0);
    out.branch_values.assign(n, 0.0);

    switch (out.method) {
        case ResponseMethod::Integral: {
            const PoleClassification& cls = out.classification;
            const detail::CutKernelIntegral engine = detail::make_creep_cut(m, cls, spec);
            detail::parallel_fill(n, threads, [&](std::size_t i) {
                const double t = times[i];
                out.np_values[i] = engine.eval(t);
                if (cls.kind == PoleKind::NegativeRealPole)
                    out.branch_values[i] = detail::creep_rp_deriv(m, cls, t, 0);
                else if (cls.kind == PoleKind::ComplexConjugatePair)
                    out.branch_values[i] = detail::creep_ccp_deriv(m, cls, t, 0);
                out.values[i] = out.np_values[i] + out.branch_values[i];
            });
            break;
        }
        case ResponseMethod::MittagLeffler: {
            detail::parallel_fill(n, threads, [&](std::size_t i) {
                out.values[i] = creep_ml(m, times[i]);
                out.np_values[i] = out.values[i];
            });
            break;
        }
        case ResponseMethod::StableSplit: {
            const detail::StableSplitEngine engine = detail::make_stable_split(m, spec);
            detail::parallel_fill(n, threads, [&](std::size_t i) {
                out.values[i] = engine.eval(times[i]);
                out.np_values[i] = out.values[i];
            });
            break;
        }
    }
    return out;
}

}  // namespace azvisco
