#pragma once
/**
 * @file power_sum.hpp
 * @brief Finite sums of real powers  c_1 s^{p_1} + ... + c_n s^{p_n}  evaluated
 *        on the principal branch of the complex plane.
 *
 * These sums are the two building blocks of every constitutive function in the
 * library: each transfer function is a ratio of two of them times a pure
 * power.  Powers are taken on the principal branch, i.e. for
 * s = rho * exp(i*phi) with rho > 0 and phi in (-pi, pi],
 *
 *     s^p = rho^p * ( cos(p*phi) + i sin(p*phi) ).
 *
 * Conjugate symmetry  f(conj(s)) = conj(f(s))  then holds automatically for
 * real coefficients.
 */

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "azvisco/errors.hpp"

namespace azvisco {

struct PowerTerm {
    double coeff = 0.0;
    double exponent = 0.0;
};

namespace detail {

/// Shared principal-branch evaluation of a term list at s = rho * exp(i*phi).
inline std::complex<double> eval_terms(const std::vector<PowerTerm>& terms, double rho, double phi) {
    std::complex<double> acc(0.0, 0.0);
    for (const PowerTerm& t : terms) {
        const double mag = std::pow(rho, t.exponent);
        acc += t.coeff * mag * std::complex<double>(std::cos(t.exponent * phi), std::sin(t.exponent * phi));
    }
    return acc;
}

}  // namespace detail

/**
 * Unvalidated power expression.  Produced by differentiation, where exponents
 * may be negative and coefficients may carry any sign.
 */
struct PowerExpr {
    std::vector<PowerTerm> terms;

    std::complex<double> eval_polar(double rho, double phi) const {
        if (rho <= 0.0) throw Error(ErrorCode::ZeroArgument, "power expression evaluated at |s| = 0");
        return detail::eval_terms(terms, rho, phi);
    }

    std::complex<double> eval(std::complex<double> s) const {
        const double rho = std::abs(s);
        if (rho == 0.0) throw Error(ErrorCode::ZeroArgument, "power expression evaluated at s = 0");
        return detail::eval_terms(terms, rho, std::arg(s));
    }
};

/**
 * Validated positive power sum:
 *   - 1 to 3 terms,
 *   - all coefficients strictly positive,
 *   - exponents in [0, 2], strictly increasing (no degenerate gaps).
 */
class PowerSum {
  public:
    explicit PowerSum(std::vector<PowerTerm> terms) : terms_(std::move(terms)) {
        if (terms_.empty() || terms_.size() > 3)
            throw Error(ErrorCode::NonPositiveCoefficient,
                        "a power sum needs 1 to 3 terms, got " + std::to_string(terms_.size()));
        for (const PowerTerm& t : terms_) {
            if (!(t.coeff > 0.0))
                throw Error(ErrorCode::NonPositiveCoefficient,
                            "coefficient " + std::to_string(t.coeff) + " is not strictly positive");
            if (!(t.exponent >= 0.0) || !(t.exponent <= 2.0))
                throw Error(ErrorCode::ExponentOutOfRange,
                            "exponent " + std::to_string(t.exponent) + " outside [0, 2]");
        }
        for (std::size_t k = 1; k < terms_.size(); ++k) {
            if (!(terms_[k].exponent - terms_[k - 1].exponent > 1e-9))
                throw Error(ErrorCode::ExponentOutOfRange,
                            "exponents must increase strictly; gap at position " + std::to_string(k) +
                                " is degenerate");
        }
    }

    const std::vector<PowerTerm>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }

    double coeff(std::size_t k) const { return terms_.at(k).coeff; }
    double exponent(std::size_t k) const { return terms_.at(k).exponent; }

    /// Lowest / highest exponent (terms are stored ascending).
    double bottom_exponent() const { return terms_.front().exponent; }
    double top_exponent() const { return terms_.back().exponent; }
    double bottom_coeff() const { return terms_.front().coeff; }
    double top_coeff() const { return terms_.back().coeff; }

    std::complex<double> eval_polar(double rho, double phi) const {
        if (rho <= 0.0) throw Error(ErrorCode::ZeroArgument, "power sum evaluated at |s| = 0");
        return detail::eval_terms(terms_, rho, phi);
    }

    std::complex<double> eval(std::complex<double> s) const {
        const double rho = std::abs(s);
        if (rho == 0.0) throw Error(ErrorCode::ZeroArgument, "power sum evaluated at s = 0");
        return detail::eval_terms(terms_, rho, std::arg(s));
    }

    /// Termwise derivative; a constant term disappears.
    PowerExpr derivative() const {
        PowerExpr d;
        for (const PowerTerm& t : terms_) {
            if (t.exponent != 0.0) d.terms.push_back({t.coeff * t.exponent, t.exponent - 1.0});
        }
        return d;
    }

    /**
     * Magnitude scale of the sum at radius rho, used to normalise residual and
     * near-pole tolerances:  sum_k |c_k| * max(1, rho)^{p_max}.
     */
    double scale(double rho) const {
        double csum = 0.0;
        for (const PowerTerm& t : terms_) csum += std::abs(t.coeff);
        return csum * std::pow(std::max(1.0, rho), top_exponent());
    }

  private:
    std::vector<PowerTerm> terms_;
};

}  // namespace azvisco
