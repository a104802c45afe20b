#pragma once

// Parameter admissibility for the fifteen model shapes.
//
// Two tiers of checks are provided.
//
//  * check_thermo   — the dissipativity inequalities a family's orders and
//                     coefficients must satisfy for the relaxation/creep pair
//                     to describe a passive material at all.  Every inequality
//                     is evaluated and reported with both sides, satisfied or
//                     not, under a stable per-family identifier.
//
//  * check_narrowed — the tightened sufficient conditions under which the
//                     relaxation modulus is completely monotonic and the creep
//                     compliance is a Bernstein function.  These come as
//                     chains of pairwise bounds; each chain is decomposed into
//                     its adjacent links, all reported under the chain's
//                     identifier.  A few families' chains are only meaningful
//                     when an auxiliary angle condition holds ("guard"); when
//                     a guard fails the narrowed conditions cannot certify
//                     monotonicity either way and the report says so instead
//                     of guessing.
//
// The spectral weight ties the two views together.  With both power sums
// evaluated on the upper edge of the branch cut,
//
//     K(rho) = Im( e^{i xi pi} * phi_eps(rho e^{i pi}) * conj(phi_sig(rho e^{i pi})) ),
//
// complete monotonicity of the relaxation modulus (and the Bernstein property
// of the creep compliance) is equivalent to K(rho) >= 0 for all rho >= 0.
// k_closed_form expands K into the finite sine polynomial
//
//     sum_{j,k} a_j * b_k * rho^{p_j + q_k} * sin((xi + q_k - p_j) * pi),
//
// while k_generic evaluates the complex product directly; the two are
// mathematically identical and the tests hold them to rounding agreement.
// k_nonneg_scan samples K on a logarithmic grid as a *falsifier*: a negative
// sample disproves monotonicity, a clean scan proves nothing by itself.

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "azvisco/errors.hpp"
#include "azvisco/models.hpp"

namespace azvisco {

/// Outcome of a constraint evaluation.
enum class ConstraintOverall {
    ThermoFail,                ///< at least one dissipativity inequality is violated
    ThermoOnly,                ///< dissipativity holds but a narrowed condition fails
    NarrowedOK,                ///< dissipativity and all narrowed conditions hold
    NarrowedNotGuaranteeable,  ///< a guard fails: the narrowed chains cannot certify anything
};

inline const char* constraint_overall_name(ConstraintOverall o) {
    switch (o) {
        case ConstraintOverall::ThermoFail: return "ThermoFail";
        case ConstraintOverall::ThermoOnly: return "ThermoOnly";
        case ConstraintOverall::NarrowedOK: return "NarrowedOK";
        case ConstraintOverall::NarrowedNotGuaranteeable: return "NarrowedNotGuaranteeable";
    }
    return "?";
}

/// One evaluated inequality: lhs <= rhs (or lhs < rhs when strict).
struct InequalityCheck {
    std::string identifier;  ///< stable rule tag, shared by all links of a chain
    double lhs = 0.0;
    double rhs = 0.0;
    bool strict = false;
    bool satisfied = false;
};

struct ConstraintReport {
    ModelCode code = ModelCode::ID_ID;
    std::vector<InequalityCheck> checks;
    ConstraintOverall overall = ConstraintOverall::ThermoFail;
    /// Human-readable description of the failed guard; empty unless
    /// overall == NarrowedNotGuaranteeable.
    std::string failed_guard;

    bool all_satisfied() const {
        for (const auto& c : checks)
            if (!c.satisfied) return false;
        return true;
    }
};

namespace detail {

inline constexpr double kPiK = 3.141592653589793238462643383279502884;

/// Comparison slack: ties within this margin count as satisfied (non-strict)
/// or as failed (strict).  Pinned so reports are reproducible bit-for-bit.
inline constexpr double kIneqTie = 1e-14;

/// Accumulates evaluated inequalities; le/lt return the satisfied flag so
/// callers can track guard state without re-scanning the list.
struct IneqList {
    std::vector<InequalityCheck> checks;

    bool le(const char* id, double lhs, double rhs) {
        const bool ok = lhs <= rhs + kIneqTie;
        checks.push_back({id, lhs, rhs, false, ok});
        return ok;
    }
    bool lt(const char* id, double lhs, double rhs) {
        const bool ok = rhs - lhs > kIneqTie;
        checks.push_back({id, lhs, rhs, true, ok});
        return ok;
    }
    bool all_ok() const {
        for (const auto& c : checks)
            if (!c.satisfied) return false;
        return true;
    }
};

// Half- and quarter-angle shorthands: cs(x) = cos(x*pi/2), s4(x) = sin(x*pi/4), ...
inline double cs(double x) { return std::cos(x * kPiK / 2.0); }
inline double sn(double x) { return std::sin(x * kPiK / 2.0); }
inline double c4(double x) { return std::cos(x * kPiK / 4.0); }
inline double s4(double x) { return std::sin(x * kPiK / 4.0); }

/// Chain pattern A (three links):
///   -R*cs(x)/cs(y) <= v <= R*(sn(x)/sn(y))*(cs(x)/cs(y)) <= R*sn(x)/sn(y)
inline void chain_sym(IneqList& L, const char* id, double v, double R, double x, double y) {
    const double csr = cs(x) / cs(y);
    const double snr = sn(x) / sn(y);
    L.le(id, -R * csr, v);
    L.le(id, v, R * snr * csr);
    L.le(id, R * snr * csr, R * snr);
}

/// Chain pattern B (two links, lower bound on v):
///   R*|cs(x)|/cs(y) <= R*(|cs(x)|/cs(y))*(sn(x)/sn(y)) <= v
inline void chain_lower(IneqList& L, const char* id, double v, double R, double x, double y) {
    const double acs = std::fabs(cs(x)) / cs(y);
    const double snr = sn(x) / sn(y);
    L.le(id, R * acs, R * acs * snr);
    L.le(id, R * acs * snr, v);
}

/// Chain pattern C (two links, upper bound on v):
///   v <= R*(sn(x)/sn(y))*(cs(x)/cs(y)) <= R*sn(x)/sn(y)
inline void chain_upper(IneqList& L, const char* id, double v, double R, double x, double y) {
    const double snr = sn(x) / sn(y);
    const double csr = cs(x) / cs(y);
    L.le(id, v, R * snr * csr);
    L.le(id, R * snr * csr, R * snr);
}

struct NamedOrders {
    double al = 0.0, be = 0.0, ga = 0.0, mu = 0.0, nu = 0.0, et = 0.0;
};

inline NamedOrders named_orders(const ModelSpec& m) {
    NamedOrders o;
    o.al = m.orders.alpha.value_or(0.0);
    o.be = m.orders.beta.value_or(0.0);
    o.ga = m.orders.gamma.value_or(0.0);
    o.mu = m.orders.mu.value_or(0.0);
    o.nu = m.orders.nu.value_or(0.0);
    o.et = m.orders.eta.value_or(0.0);
    // IDD.DD+ pins its inner derivative order to mu when gamma is not given
    // separately; the order inequalities below still mention gamma.
    if (m.code == ModelCode::IDD_DDp && !m.orders.gamma.has_value()) o.ga = o.mu;
    return o;
}

/// a_k / b_k with the catalog's 1-based indexing (ascending exponents).
inline double ak(const ModelSpec& m, std::size_t k) { return m.phi_sigma.coeff(k - 1); }
inline double bk(const ModelSpec& m, std::size_t k) { return m.phi_epsilon.coeff(k - 1); }

/// Dissipativity inequalities, one block per family.
inline void thermo_checks(const ModelSpec& m, IneqList& L) {
    const NamedOrders o = named_orders(m);
    const double al = o.al, be = o.be, ga = o.ga, mu = o.mu, nu = o.nu, et = o.et;
    switch (m.code) {
        case ModelCode::ID_ID: {
            const char* i1 = "TD-AZ-ID-ID-less-1";
            L.le(i1, 0.0, al + be - mu);
            L.le(i1, al + be - mu, 1.0);
            L.le(i1, mu, al);
            L.le(i1, be + mu, 1.0);
            const char* i2 = "TD-AZ-ID-ID-less-2";
            const double R = ak(m, 1) / ak(m, 2), v = bk(m, 1) / bk(m, 2);
            L.le(i2, -R * cs(2 * al + be - mu) / cs(be + mu), v);
            L.le(i2, v, R * sn(2 * al + be - mu) / sn(be + mu));
            break;
        }
        case ModelCode::ID_DDp: {
            const char* i1 = "TD-AZ-ID-DD-over-1";
            L.le(i1, 1.0, al + be + mu);
            L.le(i1, al + be + mu, 2.0);
            L.le(i1, be, mu);
            L.le(i1, mu, 1.0 - al);
            const char* i2 = "TD-AZ-ID-DD-over-2";
            const double R = ak(m, 1) / ak(m, 2), v = bk(m, 1) / bk(m, 2);
            L.le(i2, R * std::fabs(cs(2 * al + be + mu)) / cs(mu - be), v);
            break;
        }
        case ModelCode::IID_IID: {
            const char* i1 = "franjo-less-less-TD-1";
            L.lt(i1, be, al);
            L.le(i1, ga, et);
            L.le(i1, 0.0, be + ga - et);
            L.le(i1, be + ga - et, al + 2 * ga - et);
            L.le(i1, al + 2 * ga - et, 1.0);
            L.le(i1, al + ga, be + et);
            const char* i2 = "franjo-less-less-TD-2";
            const double R2 = bk(m, 3) / bk(m, 1), v2 = ak(m, 3) / ak(m, 1);
            L.le(i2, -R2 * cs(al + et) / cs(al + 2 * ga - et), v2);
            L.le(i2, v2, R2 * sn(al + et) / sn(al + 2 * ga - et));
            const char* i3 = "franjo-less-less-TD-3";
            const double R3 = bk(m, 3) / bk(m, 2), v3 = ak(m, 3) / ak(m, 2);
            L.le(i3, -R3 * cs(be + et) / cs(be + 2 * ga - et), v3);
            L.le(i3, v3, R3 * sn(be + et) / sn(be + 2 * ga - et));
            break;
        }
        case ModelCode::IDD_IDD: {
            const char* i1 = "IDD-IDD-less-less-TD-1";
            L.le(i1, 0.0, al + ga - mu);
            L.le(i1, al + ga - mu, 1.0);
            L.lt(i1, be, ga);
            L.le(i1, mu, al);
            L.le(i1, ga + mu, al + be);
            L.le(i1, ga + mu, 1.0);
            const char* i2 = "IDD-IDD-less-less-TD-2";
            const double R2 = bk(m, 2) / bk(m, 1), v2 = ak(m, 2) / ak(m, 1);
            L.le(i2, -R2 * cs(2 * al + be - mu) / cs(be + mu), v2);
            L.le(i2, v2, R2 * sn(2 * al + be - mu) / sn(be + mu));
            const char* i3 = "IDD-IDD-less-less-TD-3";
            const double R3 = bk(m, 3) / bk(m, 1), v3 = ak(m, 3) / ak(m, 1);
            L.le(i3, -R3 * cs(2 * al + ga - mu) / cs(ga + mu), v3);
            L.le(i3, v3, R3 * sn(2 * al + ga - mu) / sn(ga + mu));
            break;
        }
        case ModelCode::IID_IDD: {
            const char* i1 = "TD-frale-less-less-less-less-1";
            L.le(i1, mu, be);
            L.lt(i1, be, al);
            L.le(i1, ga, nu);
            L.le(i1, al + be + ga, 1.0 + mu);
            L.lt(i1, mu + nu - ga, al);
            L.le(i1, al, 1.0 - nu);
            const char* i2 = "TD-frale-less-less-less-less-2";
            const double R2 = bk(m, 3) / bk(m, 1), v2 = ak(m, 3) / ak(m, 1);
            L.le(i2, -R2 * cs(2 * al + ga - mu) / cs(ga + mu), v2);
            L.le(i2, v2, R2 * sn(2 * al + ga - mu) / sn(ga + mu));
            break;
        }
        case ModelCode::IpID_IpID: {
            const char* i1 = "franjo-over-over-TD-1";
            L.le(i1, mu, al);
            L.le(i1, 3 * al + ga - 2 * mu, 1.0);
            const char* i2 = "franjo-over-over-TD-2";
            L.le(i2, ak(m, 2) / ak(m, 1),
                 (bk(m, 2) / bk(m, 1)) * c4(1 - 3 * al - ga + 2 * mu) / c4(1 + al - ga - 2 * mu));
            L.le(i2, ak(m, 3) / ak(m, 2),
                 (bk(m, 3) / bk(m, 2)) * s4(1 + 3 * al + ga - 2 * mu) / s4(1 - al + ga + 2 * mu));
            L.le("franjo-over-over-TD-3",
                 ak(m, 3) * bk(m, 1) * cs(ga + mu) - ak(m, 2) * bk(m, 2) * sn(al - mu),
                 ak(m, 1) * bk(m, 3) * cs(2 * al + ga - mu));
            L.le("franjo-over-over-TD-4", ak(m, 1) * bk(m, 3) * sn(2 * al + ga - mu),
                 ak(m, 2) * bk(m, 2) * cs(al - mu) - ak(m, 3) * bk(m, 1) * sn(ga + mu));
            break;
        }
        case ModelCode::IDDp_IDDp: {
            const char* i1 = "TD-IDD-IDD-over-over-1";
            L.le(i1, 0.0, al + ga - et);
            L.le(i1, al + ga - et, 1.0);
            L.le(i1, ga, et);
            L.le(i1, al - ga + 2 * et, 1.0);
            const char* i3 = "TD-IDD-IDD-over-over-3";
            L.le(i3, ak(m, 2) / ak(m, 1),
                 (bk(m, 2) / bk(m, 1)) * s4(1 + al - ga + 2 * et) / s4(1 + al + 3 * ga - 2 * et));
            L.le(i3, ak(m, 3) / ak(m, 2),
                 (bk(m, 3) / bk(m, 2)) * c4(1 - al + ga - 2 * et) / c4(1 - al - 3 * ga + 2 * et));
            L.le("TD-IDD-IDD-over-over-4",
                 ak(m, 3) * bk(m, 1) * cs(al + 2 * ga - et) - ak(m, 2) * bk(m, 2) * sn(et - ga),
                 ak(m, 1) * bk(m, 3) * cs(al + et));
            L.le("TD-IDD-IDD-over-over-5", ak(m, 1) * bk(m, 3) * sn(al + et),
                 ak(m, 2) * bk(m, 2) * cs(et - ga) - ak(m, 3) * bk(m, 1) * sn(al + 2 * ga - et));
            break;
        }
        case ModelCode::IpID_IDDp: {
            const char* i1 = "TD-frale-over-less-less-over-1";
            L.le(i1, et, ga);
            L.le(i1, al + 3 * ga - 2 * et, 1.0);
            const char* i2 = "TD-frale-over-less-less-over-2";
            const double v = ak(m, 2) / bk(m, 2);
            L.le(i2,
                 (ak(m, 1) / bk(m, 1)) * s4(1 + al - ga + 2 * et) / c4(1 - al - 3 * ga + 2 * et),
                 v);
            L.le(i2, v,
                 (ak(m, 3) / bk(m, 3)) * c4(1 - al - 3 * ga + 2 * et) / s4(1 + al - ga + 2 * et));
            L.le("TD-frale-over-less-less-over-3",
                 ak(m, 1) * bk(m, 3) * cs(al + et) - ak(m, 2) * bk(m, 2) * sn(ga - et),
                 ak(m, 3) * bk(m, 1) * cs(al + 2 * ga - et));
            L.le("TD-frale-over-less-less-over-4", ak(m, 3) * bk(m, 1) * sn(al + 2 * ga - et),
                 ak(m, 2) * bk(m, 2) * cs(ga - et) - ak(m, 1) * bk(m, 3) * sn(al + et));
            break;
        }
        case ModelCode::IID_ID: {
            const char* i1 = "TD-(A)Z-IID-ID-less-1";
            L.le(i1, 0.0, al);
            L.le(i1, al, nu);
            L.lt(i1, nu, al + be - ga);
            L.le(i1, al + be - ga, 1.0);
            L.le(i1, be + nu, 1.0);
            const char* i2 = "TD-(A)Z-IID-ID-less-2";
            const double R = ak(m, 1) / ak(m, 3), v = bk(m, 1) / bk(m, 2);
            L.le(i2, -R * cs(al + 2 * be - ga) / cs(al + ga), v);
            L.le(i2, v, R * sn(al + 2 * be - ga) / sn(al + ga));
            break;
        }
        case ModelCode::IDD_DDp: {
            const char* i1 = "TD-AZ-IDD-DD-less-over-1";
            L.le(i1, 1.0, al + be + mu);
            L.le(i1, al + be + mu, 2.0);
            L.lt(i1, be, ga);
            L.le(i1, ga, mu);
            L.le(i1, mu, 1.0 - al);
            const char* i2 = "TD-AZ-IDD-DD-less-over-2";
            L.le(i2, (ak(m, 1) / ak(m, 2)) * std::fabs(cs(2 * al + be + mu)) / cs(mu - be),
                 bk(m, 1) / bk(m, 2));
            break;
        }
        case ModelCode::IpID_ID: {
            const char* i1 = "TD-(A)Z-IID-ID-over-1";
            L.le(i1, 0.0, al + be - nu);
            L.le(i1, al + be - nu, 1.0);
            L.le(i1, 1.0, al + be + nu);
            L.le(i1, al + be + nu, 2.0);
            L.le(i1, al, nu);
            L.le(i1, nu, 1.0 - be);
            const char* i2 = "TD-(A)Z-IID-ID-over-2";
            const double v = bk(m, 1) / bk(m, 2);
            L.le(i2, (ak(m, 1) / ak(m, 2)) * std::fabs(cs(al + 2 * be + nu)) / cs(nu - al), v);
            L.le(i2, v, (ak(m, 2) / ak(m, 3)) * sn(be + nu) / sn(2 * al + be - nu));
            break;
        }
        case ModelCode::IDDp_DDp: {
            const char* i1 = "TD-AZ-IDD-DD-over-over-1";
            L.le(i1, 1.0, al + 2 * be);
            L.le(i1, al + 2 * be, 2.0);
            L.le(i1, 1.0, al + be + mu);
            L.le(i1, al + be + mu, 2.0);
            L.le(i1, be, mu);
            L.le(i1, mu, 1.0 - al);
            const char* i2 = "TD-AZ-IDD-DD-over-over-2";
            const double v = bk(m, 1) / bk(m, 2);
            L.le(i2, (ak(m, 1) / ak(m, 2)) * std::fabs(cs(2 * al + be + mu)) / cs(mu - be), v);
            L.le(i2, v, (ak(m, 2) / ak(m, 3)) * sn(al + mu) / sn(al + 2 * be - mu));
            break;
        }
        case ModelCode::ID_IDD: {
            const char* i1 = "TD-(A)Z-ID-IDD-less-1";
            L.le(i1, 0.0, nu);
            L.le(i1, nu, be);
            L.lt(i1, be, mu + nu - al);
            L.le(i1, mu + nu - al, 1.0);
            L.le(i1, al, mu);
            L.le(i1, mu, 1.0 - be);
            const char* i2 = "TD-(A)Z-ID-IDD-less-2";
            const double R = ak(m, 1) / ak(m, 2), v = bk(m, 1) / bk(m, 3);
            L.le(i2, -R * cs(2 * mu + nu - al) / cs(al + nu), v);
            L.le(i2, v, R * sn(2 * mu + nu - al) / sn(al + nu));
            break;
        }
        case ModelCode::ID_DDDp: {
            const char* i1 = "TD-(A)Z-ID-DDD-over-1";
            L.le(i1, 1.0, al + be + nu);
            L.le(i1, al + be + nu, 2.0);
            L.le(i1, be, mu);
            L.lt(i1, mu, nu);
            L.le(i1, nu, 1.0 - al);
            const char* i2 = "TD-(A)Z-ID-DDD-over-2";
            L.le(i2, (ak(m, 1) / ak(m, 2)) * std::fabs(cs(2 * al + be + nu)) / cs(nu - be),
                 bk(m, 2) / bk(m, 3));
            break;
        }
        case ModelCode::ID_IDDp: {
            const char* i1 = "TD-(A)Z-ID-IDD-over-1";
            L.le(i1, 0.0, al + be - nu);
            L.le(i1, al + be - nu, 1.0);
            L.le(i1, 1.0, al + be + nu);
            L.le(i1, al + be + nu, 2.0);
            L.le(i1, be, nu);
            L.le(i1, nu, 1.0 - al);
            const char* i2 = "TD-(A)Z-ID-IDD-over-2";
            const double v = ak(m, 1) / ak(m, 2);
            L.le(i2, (bk(m, 1) / bk(m, 2)) * sn(al + 2 * be - nu) / sn(al + nu), v);
            L.le(i2, v,
                 (bk(m, 2) / bk(m, 3)) * cs(nu - be) / std::fabs(cs(2 * al + be + nu)));
            break;
        }
    }
}

/// Narrowed (complete-monotonicity) chains, appended after the dissipativity
/// block.  Returns a non-empty description if a guard failed.
inline std::string narrowed_checks(const ModelSpec& m, IneqList& L) {
    const NamedOrders o = named_orders(m);
    const double al = o.al, be = o.be, ga = o.ga, mu = o.mu, nu = o.nu, et = o.et;
    std::string guard;
    switch (m.code) {
        case ModelCode::ID_ID: {
            bool g = L.le("STD-ID.DD-guard", al, 2 * al + be - mu);
            g = L.lt("STD-ID.DD-guard", 2 * al + be - mu, 1.0) && g;
            if (!g) guard = "2 alpha + beta - mu in [alpha, 1)";
            chain_sym(L, "STD-ID.DD-2", bk(m, 1) / bk(m, 2), ak(m, 1) / ak(m, 2),
                      2 * al + be - mu, be + mu);
            break;
        }
        case ModelCode::ID_DDp: {
            chain_lower(L, "STD-ID.DD+-2", bk(m, 1) / bk(m, 2), ak(m, 1) / ak(m, 2),
                        2 * al + be + mu, mu - be);
            break;
        }
        case ModelCode::IID_IID: {
            if (!L.lt("STD-IID.IID-guard", al + et, 1.0)) guard = "alpha + eta < 1";
            chain_sym(L, "STD-IID.IID-2", ak(m, 3) / ak(m, 1), bk(m, 3) / bk(m, 1), al + et,
                      al + 2 * ga - et);
            chain_sym(L, "STD-IID.IID-3", ak(m, 3) / ak(m, 2), bk(m, 3) / bk(m, 2), be + et,
                      be + 2 * ga - et);
            break;
        }
        case ModelCode::IDD_IDD: {
            if (!L.lt("STD-IDD.IDD-guard", 2 * al + ga - mu, 1.0))
                guard = "2 alpha + gamma - mu < 1";
            chain_sym(L, "STD-IDD.IDD-2", ak(m, 2) / ak(m, 1), bk(m, 2) / bk(m, 1),
                      2 * al + be - mu, be + mu);
            chain_sym(L, "STD-IDD.IDD-3", ak(m, 3) / ak(m, 1), bk(m, 3) / bk(m, 1),
                      2 * al + ga - mu, ga + mu);
            break;
        }
        case ModelCode::IID_IDD: {
            // The second narrowed block is a pure ordering chain on exponent
            // combinations; it both constrains and guards this family.
            const char* i2 = "STD-IID.IDD-2";
            bool g = L.le(i2, 0.0, al - be - ga - mu);
            g = L.le(i2, 0.0, al - 2 * mu - nu) && g;
            g = L.le(i2, al - be - ga - mu, 2 * al - be - 2 * mu - nu) && g;
            g = L.le(i2, al - 2 * mu - nu, 2 * al - be - 2 * mu - nu) && g;
            g = L.le(i2, 2 * al - be - 2 * mu - nu, 2 * al - be - mu) && g;
            g = L.le(i2, 2 * al - be - 2 * mu - nu, 2 * al + ga - 2 * mu - nu) && g;
            g = L.le(i2, 2 * al - be - mu, 2 * al + ga - mu) && g;
            g = L.le(i2, 2 * al + ga - 2 * mu - nu, 2 * al + ga - mu) && g;
            g = L.lt(i2, 2 * al + ga - mu, 1.0) && g;
            if (!g) guard = "STD-IID.IDD-2 order chain";
            chain_sym(L, "STD-IID.IDD-3", ak(m, 3) / ak(m, 1), bk(m, 3) / bk(m, 1),
                      2 * al + ga - mu, ga + mu);
            break;
        }
        case ModelCode::IpID_IpID: {
            const double x1 = 1 - 3 * al - ga + 2 * mu, y1 = 1 + al - ga - 2 * mu;
            const double x2 = 1 + 3 * al + ga - 2 * mu, y2 = 1 - al + ga + 2 * mu;
            const char* i21 = "STD-I+ID.I+ID-2.1";
            const double R1 = bk(m, 2) / bk(m, 1);
            L.le(i21, ak(m, 2) / ak(m, 1), R1 * (c4(x1) / c4(y1)) * (s4(x1) / s4(y1)));
            L.le(i21, R1 * (c4(x1) / c4(y1)) * (s4(x1) / s4(y1)), R1 * c4(x1) / c4(y1));
            const char* i22 = "STD-I+ID.I+ID-2.2";
            const double R2 = bk(m, 3) / bk(m, 2);
            L.le(i22, ak(m, 3) / ak(m, 2), R2 * (s4(x2) / s4(y2)) * (c4(x2) / c4(y2)));
            L.le(i22, R2 * (s4(x2) / s4(y2)) * (c4(x2) / c4(y2)), R2 * s4(x2) / s4(y2));
            L.le("STD-I+ID.I+ID-3", ak(m, 3) * bk(m, 1) * cs(ga + mu),
                 ak(m, 2) * bk(m, 2) * sn(al - mu) + ak(m, 1) * bk(m, 3) * cs(2 * al + ga - mu));
            L.le("STD-I+ID.I+ID-7", ak(m, 1) * bk(m, 3) * sn(2 * al + ga - mu),
                 ak(m, 2) * bk(m, 2) * cs(al - mu) - ak(m, 3) * bk(m, 1) * sn(ga + mu));
            L.le("STD-I+ID.I+ID-8", ak(m, 1) * bk(m, 3) * sn(2 * al + ga - mu),
                 ak(m, 2) * bk(m, 2) * cs(al - mu) * sn(al - mu) / cs(2 * al + ga - mu) +
                     ak(m, 3) * bk(m, 1) * sn(ga + mu) * cs(ga + mu) / cs(2 * al + ga - mu));
            break;
        }
        case ModelCode::IDDp_IDDp: {
            const double x1 = 1 + al - ga + 2 * et, y1 = 1 + al + 3 * ga - 2 * et;
            const double x2 = 1 - al + ga - 2 * et, y2 = 1 - al - 3 * ga + 2 * et;
            const char* i2 = "STD-IDD+.IDD+-2";
            const double R1 = bk(m, 2) / bk(m, 1);
            L.le(i2, ak(m, 2) / ak(m, 1), R1 * (s4(x1) / s4(y1)) * (c4(x1) / c4(y1)));
            L.le(i2, R1 * (s4(x1) / s4(y1)) * (c4(x1) / c4(y1)), R1 * s4(x1) / s4(y1));
            const char* i2a = "STD-IDD+.IDD+-2a";
            const double R2 = bk(m, 3) / bk(m, 2);
            L.le(i2a, ak(m, 3) / ak(m, 2), R2 * (c4(x2) / c4(y2)) * (s4(x2) / s4(y2)));
            L.le(i2a, R2 * (c4(x2) / c4(y2)) * (s4(x2) / s4(y2)), R2 * c4(x2) / c4(y2));
            L.le("STD-IDD+.IDD+-3",
                 ak(m, 3) * bk(m, 1) * cs(al + 2 * ga - et) - ak(m, 2) * bk(m, 2) * sn(et - ga),
                 ak(m, 1) * bk(m, 3) * cs(al + et));
            L.le("STD-IDD+.IDD+-4", ak(m, 1) * bk(m, 3) * sn(al + et),
                 ak(m, 2) * bk(m, 2) * cs(et - ga) - ak(m, 3) * bk(m, 1) * sn(al + 2 * ga - et));
            L.le("STD-IDD+.IDD+-5", ak(m, 1) * bk(m, 3) * sn(al + et),
                 ak(m, 2) * bk(m, 2) * cs(et - ga) * sn(et - ga) / cs(al + et) +
                     ak(m, 3) * bk(m, 1) * sn(al + 2 * ga - et) * cs(al + 2 * ga - et) /
                         cs(al + et));
            break;
        }
        case ModelCode::IpID_IDDp: {
            const double x = 1 + al - ga + 2 * et, y = 1 - al - 3 * ga + 2 * et;
            const char* i2 = "STD-frale-over-less-less-over-2";
            const double R1 = ak(m, 1) / bk(m, 1);
            L.le(i2, R1 * s4(x) / c4(y), R1 * (s4(x) / c4(y)) * (c4(x) / s4(y)));
            L.le(i2, R1 * (s4(x) / c4(y)) * (c4(x) / s4(y)), ak(m, 2) / bk(m, 2));
            const char* i2a = "STD-frale-over-less-less-over-2a";
            const double R2 = ak(m, 3) / bk(m, 3);
            L.le(i2a, ak(m, 2) / bk(m, 2), R2 * (c4(y) / s4(x)) * (s4(y) / c4(x)));
            L.le(i2a, R2 * (c4(y) / s4(x)) * (s4(y) / c4(x)), R2 * c4(y) / s4(x));
            L.le("STD-frale-over-less-less-over-3",
                 ak(m, 1) * bk(m, 3) * cs(al + et) - ak(m, 2) * bk(m, 2) * sn(ga - et),
                 ak(m, 3) * bk(m, 1) * cs(al + 2 * ga - et));
            L.le("STD-frale-over-less-less-over-4", ak(m, 3) * bk(m, 1) * sn(al + 2 * ga - et),
                 ak(m, 2) * bk(m, 2) * cs(ga - et) - ak(m, 1) * bk(m, 3) * sn(al + et));
            L.le("STD-frale-over-less-less-over-5", ak(m, 3) * bk(m, 1) * sn(al + 2 * ga - et),
                 ak(m, 2) * bk(m, 2) * cs(ga - et) * sn(ga - et) / cs(al + 2 * ga - et) +
                     ak(m, 1) * bk(m, 3) * sn(al + et) * cs(al + et) / cs(al + 2 * ga - et));
            break;
        }
        case ModelCode::IID_ID: {
            if (!L.lt("STD-IID.ID-guard", al + 2 * be - ga, 1.0))
                guard = "alpha + 2 beta - gamma < 1";
            chain_upper(L, "STD-IID.ID-2", bk(m, 1) / bk(m, 2), ak(m, 1) / ak(m, 3),
                        al + 2 * be - ga, al + ga);
            break;
        }
        case ModelCode::IDD_DDp: {
            chain_lower(L, "STD-IDD.DD+-2", bk(m, 1) / bk(m, 2), ak(m, 1) / ak(m, 2),
                        2 * al + be + mu, mu - be);
            break;
        }
        case ModelCode::IpID_ID: {
            chain_lower(L, "STD-I+ID.ID-2", bk(m, 1) / bk(m, 2), ak(m, 1) / ak(m, 2),
                        al + 2 * be + nu, nu - al);
            chain_upper(L, "STD-I+ID.ID-3", bk(m, 1) / bk(m, 2), ak(m, 2) / ak(m, 3), be + nu,
                        2 * al + be - nu);
            break;
        }
        case ModelCode::IDDp_DDp: {
            if (!L.lt("STD-IDD+.DD+-guard", 2 * al + be - mu, 1.0))
                guard = "2 alpha + beta - mu < 1";
            chain_lower(L, "STD-IDD+.DD+-2", bk(m, 1) / bk(m, 2), ak(m, 1) / ak(m, 2),
                        2 * al + be + mu, mu - be);
            chain_upper(L, "STD-IDD+.DD+-3", bk(m, 1) / bk(m, 2), ak(m, 2) / ak(m, 3), al + mu,
                        al + 2 * be - mu);
            break;
        }
        case ModelCode::ID_IDD: {
            if (!L.lt("STD-ID.IDD-guard", 2 * mu + nu - al, 1.0))
                guard = "2 mu + nu - alpha < 1";
            chain_sym(L, "STD-ID.IDD-2", bk(m, 1) / bk(m, 3), ak(m, 1) / ak(m, 2),
                      2 * mu + nu - al, al + nu);
            break;
        }
        case ModelCode::ID_DDDp: {
            chain_lower(L, "STD-ID.DDD+-2", bk(m, 2) / bk(m, 3), ak(m, 1) / ak(m, 2),
                        2 * al + be + nu, nu - be);
            break;
        }
        case ModelCode::ID_IDDp: {
            const char* i2 = "STD-ID.IDD+-2";
            const double R1 = bk(m, 1) / bk(m, 2);
            const double m1 = R1 * (sn(al + 2 * be - nu) / sn(al + nu)) *
                              (cs(al + 2 * be - nu) / cs(al + nu));
            L.le(i2, R1 * sn(al + 2 * be - nu) / sn(al + nu), m1);
            L.le(i2, m1, ak(m, 1) / ak(m, 2));
            const char* i3 = "STD-ID.IDD+-3";
            const double R2 = bk(m, 2) / bk(m, 3);
            const double m2 = R2 * (cs(nu - be) / std::fabs(cs(2 * al + be + nu))) *
                              (sn(nu - be) / sn(2 * al + be + nu));
            L.le(i3, ak(m, 1) / ak(m, 2), m2);
            L.le(i3, m2, R2 * cs(nu - be) / std::fabs(cs(2 * al + be + nu)));
            break;
        }
    }
    return guard;
}

}  // namespace detail

/// Evaluate the dissipativity inequalities for the model's family.
/// overall is ThermoOnly when every inequality holds, ThermoFail otherwise.
inline ConstraintReport check_thermo(const ModelSpec& m) {
    detail::IneqList L;
    detail::thermo_checks(m, L);
    ConstraintReport r;
    r.code = m.code;
    r.overall = L.all_ok() ? ConstraintOverall::ThermoOnly : ConstraintOverall::ThermoFail;
    r.checks = std::move(L.checks);
    return r;
}

/// Evaluate dissipativity plus the narrowed complete-monotonicity chains.
/// Precedence: any dissipativity failure => ThermoFail (narrowed checks are
/// not attempted); a failed guard => NarrowedNotGuaranteeable with the guard
/// recorded (chains are still evaluated and listed truthfully); otherwise
/// NarrowedOK iff every chain link holds, ThermoOnly if one fails.
inline ConstraintReport check_narrowed(const ModelSpec& m) {
    detail::IneqList L;
    detail::thermo_checks(m, L);
    ConstraintReport r;
    r.code = m.code;
    if (!L.all_ok()) {
        r.overall = ConstraintOverall::ThermoFail;
        r.checks = std::move(L.checks);
        return r;
    }
    const std::string guard = detail::narrowed_checks(m, L);
    if (!guard.empty()) {
        r.overall = ConstraintOverall::NarrowedNotGuaranteeable;
        r.failed_guard = guard;
    } else {
        r.overall =
            L.all_ok() ? ConstraintOverall::NarrowedOK : ConstraintOverall::ThermoOnly;
    }
    r.checks = std::move(L.checks);
    return r;
}

/// Spectral weight via the complex product on the upper cut edge,
/// expanded trigonometrically so no branch choices are left implicit.
inline double k_generic(const ModelSpec& m, double rho) {
    const std::complex<double> pe = m.phi_epsilon.eval_polar(rho, detail::kPiK);
    const std::complex<double> ps = m.phi_sigma.eval_polar(rho, detail::kPiK);
    const double sx = std::sin(m.xi * detail::kPiK);
    const double cx = std::cos(m.xi * detail::kPiK);
    return sx * (pe.real() * ps.real() + pe.imag() * ps.imag()) +
           cx * (pe.imag() * ps.real() - pe.real() * ps.imag());
}

/// Spectral weight as the family's finite sine polynomial in rho.
inline double k_closed_form(const ModelSpec& m, double rho) {
    double sum = 0.0;
    for (std::size_t j = 0; j < m.phi_sigma.size(); ++j) {
        const double aj = m.phi_sigma.coeff(j);
        const double pj = m.phi_sigma.exponent(j);
        for (std::size_t k = 0; k < m.phi_epsilon.size(); ++k) {
            const double bkk = m.phi_epsilon.coeff(k);
            const double qk = m.phi_epsilon.exponent(k);
            sum += aj * bkk * std::pow(rho, pj + qk) *
                   std::sin((m.xi + qk - pj) * detail::kPiK);
        }
    }
    return sum;
}

/// Sum of the absolute values of the expansion's terms at rho.  This is the
/// natural roundoff scale for K at that point: cancellation between terms can
/// leave a value as small as ~1e-16 times this sum even when the exact K is
/// zero, so "negative" is only meaningful relative to it.
inline double k_term_scale(const ModelSpec& m, double rho) {
    double sum = 0.0;
    for (std::size_t j = 0; j < m.phi_sigma.size(); ++j)
        for (std::size_t k = 0; k < m.phi_epsilon.size(); ++k)
            sum += m.phi_sigma.coeff(j) * m.phi_epsilon.coeff(k) *
                   std::pow(rho, m.phi_sigma.exponent(j) + m.phi_epsilon.exponent(k));
    return sum;
}

/// Logarithmic sampling grid for the nonnegativity scan.  The defaults are
/// the minimum the scan accepts; narrower or coarser grids are rejected.
struct ScanGrid {
    double rho_min = 1e-6;
    double rho_max = 1e6;
    int points_per_decade = 20;
};

struct ScanViolation {
    double rho = 0.0;
    double value = 0.0;
};

struct ScanResult {
    bool nonnegative = true;
    std::optional<ScanViolation> first_violation;  ///< smallest violating rho
    double max_abs = 0.0;                          ///< largest sampled |K|, informational
};

/// Sample K on a log grid and flag the smallest rho where it dips below
/// -1e-12 * k_term_scale(m, rho).  The tolerance is per-point: K's magnitude
/// spans many orders across the grid (it grows like the top power of rho), so
/// a single global threshold taken from the largest sample would mask genuine
/// sign changes at moderate rho.  Relative to the local term sum, 1e-12 is
/// far above roundoff yet far below any real dip.  A flag disproves complete
/// monotonicity; a clean pass is only absence of a counterexample on this
/// grid.
inline ScanResult k_nonneg_scan(const ModelSpec& m, const ScanGrid& grid = {}) {
    if (!(grid.rho_min <= 1e-6) || !(grid.rho_max >= 1e6) || grid.points_per_decade < 10)
        throw Error(ErrorCode::UsageError,
                    "scan grid must span at least [1e-6, 1e6] with >= 10 points per decade");
    const double l0 = std::log10(grid.rho_min);
    const double l1 = std::log10(grid.rho_max);
    const long n = static_cast<long>(std::ceil((l1 - l0) * grid.points_per_decade));
    ScanResult res;
    for (long i = 0; i <= n; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(n);
        const double rho = std::pow(10.0, l0 + f * (l1 - l0));
        const double val = k_closed_form(m, rho);
        res.max_abs = std::max(res.max_abs, std::fabs(val));
        if (res.nonnegative && val < -1e-12 * k_term_scale(m, rho)) {
            res.nonnegative = false;
            res.first_violation = ScanViolation{rho, val};
        }
    }
    return res;
}

}  // namespace azvisco
