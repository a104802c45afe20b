#pragma once
/**
 * @file models.hpp
 * @brief Catalog of the fifteen constitutive families and their transfer
 *        functions.
 *
 * Every family couples stress and strain through two positive power sums
 * phi_sigma and phi_epsilon and one extra pure power:
 *
 *     sigma_hat(s) * phi_sigma(s) = s^xi * phi_epsilon(s) * epsilon_hat(s),
 *
 * so that in the transform domain
 *
 *     relaxation:  sigma_sr_hat(s) = s^{xi-1} * phi_epsilon(s) / phi_sigma(s),
 *     creep:       eps_cr_hat(s)   = s^{-(1+xi)} * phi_sigma(s) / phi_epsilon(s),
 *
 * and the two responses obey  sigma_sr_hat * eps_cr_hat = 1/s^2.
 *
 * A family is selected by a short code naming the cascade of fractional
 * integrals (I) and derivatives (D) on the stress side and the strain side,
 * e.g. "I+ID.ID".  The code fixes which fractional orders are required and how
 * they combine into the exponents of the two power sums; the caller supplies
 * the orders plus the positive coefficients a (stress side) and b (strain
 * side), lowest exponent first.
 */

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "azvisco/errors.hpp"
#include "azvisco/power_sum.hpp"

namespace azvisco {

enum class ModelCode {
    ID_ID,
    ID_DDp,
    IID_IID,
    IDD_IDD,
    IID_IDD,
    IpID_IpID,
    IDDp_IDDp,
    IpID_IDDp,
    IID_ID,
    IDD_DDp,
    IpID_ID,
    IDDp_DDp,
    ID_IDD,
    ID_DDDp,
    ID_IDDp,
};

inline constexpr std::array<ModelCode, 15> kAllModelCodes = {
    ModelCode::ID_ID,     ModelCode::ID_DDp,    ModelCode::IID_IID,  ModelCode::IDD_IDD,
    ModelCode::IID_IDD,   ModelCode::IpID_IpID, ModelCode::IDDp_IDDp, ModelCode::IpID_IDDp,
    ModelCode::IID_ID,    ModelCode::IDD_DDp,   ModelCode::IpID_ID,  ModelCode::IDDp_DDp,
    ModelCode::ID_IDD,    ModelCode::ID_DDDp,   ModelCode::ID_IDDp,
};

inline const char* to_string(ModelCode c) {
    switch (c) {
        case ModelCode::ID_ID: return "ID.ID";
        case ModelCode::ID_DDp: return "ID.DD+";
        case ModelCode::IID_IID: return "IID.IID";
        case ModelCode::IDD_IDD: return "IDD.IDD";
        case ModelCode::IID_IDD: return "IID.IDD";
        case ModelCode::IpID_IpID: return "I+ID.I+ID";
        case ModelCode::IDDp_IDDp: return "IDD+.IDD+";
        case ModelCode::IpID_IDDp: return "I+ID.IDD+";
        case ModelCode::IID_ID: return "IID.ID";
        case ModelCode::IDD_DDp: return "IDD.DD+";
        case ModelCode::IpID_ID: return "I+ID.ID";
        case ModelCode::IDDp_DDp: return "IDD+.DD+";
        case ModelCode::ID_IDD: return "ID.IDD";
        case ModelCode::ID_DDDp: return "ID.DDD+";
        case ModelCode::ID_IDDp: return "ID.IDD+";
    }
    return "?";
}

inline ModelCode model_code_from_string(const std::string& s) {
    for (ModelCode c : kAllModelCodes)
        if (s == to_string(c)) return c;
    throw Error(ErrorCode::ParseError, "unknown model code '" + s + "'");
}

/// Fractional orders a family may use; which ones are required depends on the code.
struct FractionalOrders {
    std::optional<double> alpha, beta, gamma, mu, nu, eta;
};

/**
 * A fully built model: the two validated power sums, the pure-power order xi,
 * and (where the family defines them) the two auxiliary order read-backs
 * lambda/kappa that some validity conditions quote.
 */
struct ModelSpec {
    ModelCode code;
    FractionalOrders orders;
    PowerSum phi_sigma;
    PowerSum phi_epsilon;
    double xi = 0.0;
    std::optional<double> lambda_order;
    std::optional<double> kappa_order;
};

namespace detail {

inline double need_order(const std::optional<double>& v, const char* name, const char* code) {
    if (!v.has_value())
        throw Error(ErrorCode::MissingOrder,
                    std::string("model ") + code + " requires order '" + name + "'");
    if (!(*v >= 0.0) || !(*v <= 1.0))
        throw Error(ErrorCode::ExponentOutOfRange,
                    std::string("order '") + name + "' = " + std::to_string(*v) + " outside [0, 1]");
    return *v;
}

inline PowerSum make_sum(const std::vector<double>& coeffs, const std::vector<double>& exps,
                         const char* side, const char* code) {
    if (coeffs.size() != exps.size())
        throw Error(ErrorCode::NonPositiveCoefficient,
                    std::string("model ") + code + " needs " + std::to_string(exps.size()) + " '" +
                        side + "' coefficients, got " + std::to_string(coeffs.size()));
    std::vector<PowerTerm> terms;
    terms.reserve(coeffs.size());
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (!(coeffs[k] > 0.0))
            throw Error(ErrorCode::NonPositiveCoefficient,
                        std::string("coefficient ") + side + "[" + std::to_string(k + 1) +
                            "] must be strictly positive");
        if (k > 0 && !(exps[k] > 0.0 && exps[k] < 2.0))
            throw Error(ErrorCode::ExponentOutOfRange,
                        std::string("combined exponent ") + side + "-slot " + std::to_string(k + 1) +
                            " = " + std::to_string(exps[k]) + " outside (0, 2) for model " + code);
        terms.push_back({coeffs[k], exps[k]});
    }
    return PowerSum(std::move(terms));
}

}  // namespace detail

/**
 * Build and validate a model.
 *
 * @param code   family selector
 * @param orders fractional orders; the family's required subset must be
 *               present, each in [0, 1]
 * @param a      coefficients of phi_sigma, lowest exponent first
 * @param b      coefficients of phi_epsilon, lowest exponent first
 *
 * Throws Error with MissingOrder / NonPositiveCoefficient /
 * ExponentOutOfRange when the inputs do not describe a structurally valid
 * member of the family (combined exponents must stay inside (0, 2) and gaps
 * must be non-degenerate).  The pure-power order xi is recorded as-is: it is
 * an inequality property, not a structural one, so the dissipativity checks
 * in constraints.hpp — not the catalog — decide whether a given xi is
 * admissible.  Evaluation routines that genuinely need xi in (0, 1) enforce
 * that themselves at call time.
 */
inline ModelSpec build_model(ModelCode code, const FractionalOrders& orders,
                             const std::vector<double>& a, const std::vector<double>& b) {
    using detail::need_order;
    const char* name = to_string(code);

    std::vector<double> p;        // exponents of phi_sigma
    std::vector<double> q;        // exponents of phi_epsilon
    double xi = 0.0;
    std::optional<double> lambda_order, kappa_order;

    switch (code) {
        case ModelCode::ID_ID: {
            const double al = need_order(orders.alpha, "alpha", name);
            const double be = need_order(orders.beta, "beta", name);
            const double mu = need_order(orders.mu, "mu", name);
            p = {0.0, al + be};
            q = {0.0, al + be};
            xi = al - mu;
            break;
        }
        case ModelCode::ID_DDp: {
            const double al = need_order(orders.alpha, "alpha", name);
            const double be = need_order(orders.beta, "beta", name);
            const double mu = need_order(orders.mu, "mu", name);
            p = {0.0, al + be};
            q = {0.0, al + be};
            xi = al + mu;
            break;
        }
        case ModelCode::IID_IID: {
            const double al = need_order(orders.alpha, "alpha", name);
            const double be = need_order(orders.beta, "beta", name);
            const double ga = need_order(orders.gamma, "gamma", name);
            const double et = need_order(orders.eta, "eta", name);
            p = {0.0, al - be, al + ga};
            q = p;
            xi = et - ga;
            lambda_order = al - be;
            break;
        }
        case ModelCode::IDD_IDD: {
            const double al = need_order(orders.alpha, "alpha", name);
            const double be = need_order(orders.beta, "beta", name);
            const double ga = need_order(orders.gamma, "gamma", name);
            const double mu = need_order(orders.mu, "mu", name);
            p = {0.0, al + be, al + ga};
            q = p;
            xi = al - mu;
            lambda_order = al + be;
            break;
        }
        case ModelCode::IID_IDD: {
            const double al = need_order(orders.alpha, "alpha", name);
            const double be = need_order(orders.beta, "beta", name);
            const double ga = need_order(orders.gamma, "gamma", name);
            const double mu = need_order(orders.mu, "mu", name);
            const double nu = need_order(orders.nu, "nu", name);
            p = {0.0, mu + nu, al + ga};
            q = {0.0, al - be, al + ga};
            xi = al - mu;
            lambda_order = mu + nu;
            kappa_order = al - be;
            break;
        }
        case ModelCode::IpID_IpID: {
            const double al = need_order(orders.alpha, "alpha", name);
            const double ga = need_order(orders.gamma, "gamma", name);
            const double mu = need_order(orders.mu, "mu", name);
            const double top = 1.0 + al + ga;
            p = {0.0, top / 2.0, top};
            q = p;
            xi = al - mu;
            break;
        }
        case ModelCode::IDDp_IDDp: {
            const double al = need_order(orders.alpha, "alpha", name);
            const double ga = need_order(orders.gamma, "gamma", name);
            const double et = need_order(orders.eta, "eta", name);
            const double top = 1.0 + al + ga;
            p = {0.0, top / 2.0, top};
            q = p;
            xi = et - ga;
            break;
        }
        case ModelCode::IpID_IDDp: {
            const double al = need_order(orders.alpha, "alpha", name);
            const double ga = need_order(orders.gamma, "gamma", name);
            const double et = need_order(orders.eta, "eta", name);
            const double top = 1.0 + al + ga;
            p = {0.0, top / 2.0, top};
            q = p;
            xi = 1.0 - (ga - et);
            break;
        }
        case ModelCode::IID_ID: {
            const double al = need_order(orders.alpha, "alpha", name);
            const double be = need_order(orders.beta, "beta", name);
            const double ga = need_order(orders.gamma, "gamma", name);
            const double nu = need_order(orders.nu, "nu", name);
            p = {0.0, al + be - ga - nu, al + be};
            q = {0.0, al + be};
            xi = be - ga;
            lambda_order = al + be - ga - nu;
            kappa_order = al + be;
            break;
        }
        case ModelCode::IDD_DDp: {
            const double al = need_order(orders.alpha, "alpha", name);
            const double be = need_order(orders.beta, "beta", name);
            const double mu = need_order(orders.mu, "mu", name);
            p = {0.0, al + be, al + mu};
            q = {0.0, al + be};
            xi = al + mu;
            lambda_order = al + be;
            kappa_order = al + mu;
            break;
        }
        case ModelCode::IpID_ID: {
            const double al = need_order(orders.alpha, "alpha", name);
            const double be = need_order(orders.beta, "beta", name);
            const double nu = need_order(orders.nu, "nu", name);
            p = {0.0, al + be, 2.0 * (al + be)};
            q = {0.0, al + be};
            xi = be + nu;
            break;
        }
        case ModelCode::IDDp_DDp: {
            const double al = need_order(orders.alpha, "alpha", name);
            const double be = need_order(orders.beta, "beta", name);
            const double mu = need_order(orders.mu, "mu", name);
            p = {0.0, al + be, 2.0 * (al + be)};
            q = {0.0, al + be};
            xi = al + mu;
            break;
        }
        case ModelCode::ID_IDD: {
            const double al = need_order(orders.alpha, "alpha", name);
            const double be = need_order(orders.beta, "beta", name);
            const double mu = need_order(orders.mu, "mu", name);
            const double nu = need_order(orders.nu, "nu", name);
            p = {0.0, mu + nu};
            q = {0.0, al + be, mu + nu};
            xi = mu - al;
            lambda_order = mu + nu;
            kappa_order = al + be;
            break;
        }
        case ModelCode::ID_DDDp: {
            const double al = need_order(orders.alpha, "alpha", name);
            const double be = need_order(orders.beta, "beta", name);
            const double mu = need_order(orders.mu, "mu", name);
            const double nu = need_order(orders.nu, "nu", name);
            p = {0.0, al + be};
            q = {0.0, nu - mu, al + be + nu - mu};
            xi = al + mu;
            lambda_order = nu - mu;
            kappa_order = al + be + nu - mu;
            break;
        }
        case ModelCode::ID_IDDp: {
            const double al = need_order(orders.alpha, "alpha", name);
            const double be = need_order(orders.beta, "beta", name);
            const double nu = need_order(orders.nu, "nu", name);
            p = {0.0, al + be};
            q = {0.0, al + be, 2.0 * (al + be)};
            xi = nu - be;
            break;
        }
    }

    ModelSpec spec{code,
                   orders,
                   detail::make_sum(a, p, "a", name),
                   detail::make_sum(b, q, "b", name),
                   xi,
                   lambda_order,
                   kappa_order};
    return spec;
}

/// s^e on the principal branch.
inline std::complex<double> pow_principal(std::complex<double> s, double e) {
    const double rho = std::abs(s);
    if (rho == 0.0) throw Error(ErrorCode::ZeroArgument, "0^e on the principal branch");
    const double phi = std::arg(s);
    const double mag = std::pow(rho, e);
    return mag * std::complex<double>(std::cos(e * phi), std::sin(e * phi));
}

namespace detail {
inline void guard_pole(const PowerSum& f, std::complex<double> s, const char* which) {
    const double rho = std::abs(s);
    if (std::abs(f.eval(s)) < 1e-12 * f.scale(rho))
        throw Error(ErrorCode::PoleHit, std::string("transform evaluated on a zero of ") + which);
}
}  // namespace detail

/// Transform-domain relaxation modulus  s^{xi-1} phi_eps(s) / phi_sigma(s).
inline std::complex<double> laplace_relaxation(const ModelSpec& m, std::complex<double> s) {
    detail::guard_pole(m.phi_sigma, s, "phi_sigma");
    return pow_principal(s, m.xi - 1.0) * m.phi_epsilon.eval(s) / m.phi_sigma.eval(s);
}

/// Transform-domain creep compliance  s^{-(1+xi)} phi_sigma(s) / phi_eps(s).
inline std::complex<double> laplace_creep(const ModelSpec& m, std::complex<double> s) {
    detail::guard_pole(m.phi_epsilon, s, "phi_epsilon");
    return pow_principal(s, -(1.0 + m.xi)) * m.phi_sigma.eval(s) / m.phi_epsilon.eval(s);
}

}  // namespace azvisco
