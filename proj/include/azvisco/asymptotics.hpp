#pragma once

/**
 * Closed-form short-time and long-time expansions of the relaxation modulus
 * and creep compliance for the model whose stress side is {1, s^P, s^(2P)}
 * and whose strain side is {1, s^P} (code "I+ID.ID").
 *
 * Both response transforms are ratios of power sums, so expanding the ratio
 * geometrically at s -> infinity (short time) or s -> 0 (long time) and
 * inverting term by term with  L^-1[s^(-mu)] = t^(mu-1) / Gamma(mu)  yields a
 * truncated power series in t.  The expansion is carried to three terms on
 * the dominant end of each response and to the leading term where the next
 * correction is not a pure power of the model's exponent lattice.
 *
 * Every coefficient is a finite arithmetic expression in the model
 * coefficients and Gamma values: evaluation involves no quadrature and is
 * reproducible bit for bit.
 */

#include <cmath>
#include <string>
#include <vector>

#include <azvisco/errors.hpp>
#include <azvisco/models.hpp>

namespace azvisco {

/// Which end of the time axis a truncated expansion is valid at.
enum class SeriesEnd { ShortTime, LongTime };

inline const char* to_string(SeriesEnd e) {
    return e == SeriesEnd::ShortTime ? "short" : "long";
}

struct AsymptoticTerm {
    double coefficient = 0.0;
    double exponent = 0.0;
};

/**
 * A truncated power expansion  sum_k c_k t^(e_k)  valid near one end of the
 * time axis.  Terms are stored dominance-first: ascending exponents for a
 * short-time series, descending for a long-time one, so terms.front() is
 * always the leading behaviour.  A term whose structural prefactor cancels
 * keeps its slot with coefficient zero, preserving the exponent ladder.
 */
struct AsymptoticSeries {
    std::vector<AsymptoticTerm> terms;
    SeriesEnd valid_end = SeriesEnd::ShortTime;

    /// Plain power-sum evaluation; defined for t > 0 only because exponents
    /// may be negative.
    double eval(double t) const {
        if (!(t > 0.0))
            throw Error(ErrorCode::ZeroArgument, "asymptotic series evaluated at t <= 0");
        double sum = 0.0;
        for (const AsymptoticTerm& term : terms)
            sum += term.coefficient * std::pow(t, term.exponent);
        return sum;
    }
};

namespace detail {

/* The expansions below are specific to the {1, s^P, s^2P} / {1, s^P}
   stress/strain exponent lattice; other family members have different
   ladders and are rejected rather than silently mis-expanded. */
inline void require_expansion_shape(const ModelSpec& m, const char* what) {
    if (m.code != ModelCode::IpID_ID)
        throw Error(ErrorCode::WrongModelShape,
                    std::string(what) + " expansion is defined for model I+ID.ID only, got " +
                        to_string(m.code));
}

}  // namespace detail

/**
 * Short-time expansion of the relaxation modulus, three terms:
 *
 *   (b2/a3) t^(-s0) / Gamma(1-s0)
 * + (b2/a3) (b1/b2 - a2/a3) t^(P-s0) / Gamma(1+P-s0)
 * + (b2/a3) ((a2/a3)^2 - a1/a3 - (a2/a3)(b1/b2)) t^(2P-s0) / Gamma(1+2P-s0)
 *
 * with P the lattice step and s0 = xi - P in (0, 1) the strength of the
 * initial singularity.
 */
inline AsymptoticSeries relax_short(const ModelSpec& m) {
    detail::require_expansion_shape(m, "relaxation short-time");
    const double a1 = m.phi_sigma.coeff(0), a2 = m.phi_sigma.coeff(1), a3 = m.phi_sigma.coeff(2);
    const double b1 = m.phi_epsilon.coeff(0), b2 = m.phi_epsilon.coeff(1);
    const double P = m.phi_epsilon.top_exponent();
    const double s0 = m.xi - P;
    const double ra = a2 / a3, rb = b1 / b2;
    AsymptoticSeries out;
    out.valid_end = SeriesEnd::ShortTime;
    out.terms = {
        {b2 / a3 / std::tgamma(1.0 - s0), -s0},
        {b2 / a3 * (rb - ra) / std::tgamma(1.0 + P - s0), P - s0},
        {b2 / a3 * (ra * ra - a1 / a3 - ra * rb) / std::tgamma(1.0 + 2.0 * P - s0), 2.0 * P - s0},
    };
    return out;
}

/**
 * Long-time expansion of the relaxation modulus, leading term only:
 *   (b1/a1) t^(-xi) / Gamma(1-xi).
 * The next correction decays by a full lattice step and its Gamma argument
 * leaves (0, 1), so the single algebraic tail is the honest truncation.
 */
inline AsymptoticSeries relax_long(const ModelSpec& m) {
    detail::require_expansion_shape(m, "relaxation long-time");
    const double a1 = m.phi_sigma.coeff(0);
    const double b1 = m.phi_epsilon.coeff(0);
    AsymptoticSeries out;
    out.valid_end = SeriesEnd::LongTime;
    out.terms = {{b1 / a1 / std::tgamma(1.0 - m.xi), -m.xi}};
    return out;
}

/**
 * Short-time expansion of the creep compliance, three terms:
 *
 *   (a3/b2) t^(s0) / Gamma(1+s0)
 * + (a3/b2) (a2/a3 - b1/b2) t^(xi) / Gamma(1+xi)
 * + (a3/b2) (a1/a3 - (a2/a3)(b1/b2) + (b1/b2)^2) t^(xi+P) / Gamma(1+xi+P)
 */
inline AsymptoticSeries creep_short(const ModelSpec& m) {
    detail::require_expansion_shape(m, "creep short-time");
    const double a1 = m.phi_sigma.coeff(0), a2 = m.phi_sigma.coeff(1), a3 = m.phi_sigma.coeff(2);
    const double b1 = m.phi_epsilon.coeff(0), b2 = m.phi_epsilon.coeff(1);
    const double P = m.phi_epsilon.top_exponent();
    const double s0 = m.xi - P;
    const double ra = a2 / a3, rb = b1 / b2;
    AsymptoticSeries out;
    out.valid_end = SeriesEnd::ShortTime;
    out.terms = {
        {a3 / b2 / std::tgamma(1.0 + s0), s0},
        {a3 / b2 * (ra - rb) / std::tgamma(1.0 + m.xi), m.xi},
        {a3 / b2 * (a1 / a3 - ra * rb + rb * rb) / std::tgamma(1.0 + m.xi + P), m.xi + P},
    };
    return out;
}

/**
 * Long-time expansion of the creep compliance, three terms (descending
 * exponents, dominant growth first):
 *
 *   (a1/b1) t^(xi) / Gamma(1+xi)
 * + (a1/b1) (a2/a1 - b2/b1) t^(s0) / Gamma(1+s0)
 * + (a1/b1) (a3/a1 - (a2/a1)(b2/b1) + (b2/b1)^2) t^(s0-P) / Gamma(1+s0-P)
 *
 * The third exponent s0-P is negative; its Gamma argument may leave (0, 1),
 * where tgamma continues the coefficient analytically (and a pole of Gamma
 * correctly zeroes the term).
 */
inline AsymptoticSeries creep_long(const ModelSpec& m) {
    detail::require_expansion_shape(m, "creep long-time");
    const double a1 = m.phi_sigma.coeff(0), a2 = m.phi_sigma.coeff(1), a3 = m.phi_sigma.coeff(2);
    const double b1 = m.phi_epsilon.coeff(0), b2 = m.phi_epsilon.coeff(1);
    const double P = m.phi_epsilon.top_exponent();
    const double s0 = m.xi - P;
    const double ra = a2 / a1, rb = b2 / b1;
    AsymptoticSeries out;
    out.valid_end = SeriesEnd::LongTime;
    out.terms = {
        {a1 / b1 / std::tgamma(1.0 + m.xi), m.xi},
        {a1 / b1 * (ra - rb) / std::tgamma(1.0 + s0), s0},
        {a1 / b1 * (a3 / a1 - ra * rb + rb * rb) / std::tgamma(1.0 + s0 - P), s0 - P},
    };
    return out;
}

}  // namespace azvisco
