#pragma once
/**
 * @file quadrature.hpp
 * @brief Adaptive Gauss-Kronrod quadrature tuned for the integral
 *        representations used by this library, plus a fixed-contour inverse
 *        Laplace oracle.
 *
 * The integrands we meet are smooth on (0, inf) but may combine
 *   - an integrable power singularity rho^c, c in (-1, 0), at the origin,
 *   - exponential damping e^{-rho t} (relaxation kernels) or a bounded factor
 *     (1 - e^{-rho t}) with only algebraic decay (creep kernels),
 *   - a simple pole on the positive axis (principal-value branch cuts).
 *
 * Strategy:
 *   - 7/15 Gauss-Kronrod panels (interior nodes only, endpoints never
 *     sampled) with global-error-driven bisection;
 *   - the head [0, split] is regularised by the substitution w = rho^{1+c}
 *     when the caller knows the endpoint exponent c, otherwise covered by a
 *     geometric ladder (ratio 1/4) toward 0;
 *   - the tail [split, inf) is mapped through rho = split * u / (1 - u) and
 *     either truncated where the exponential damping underflows or, for
 *     algebraic decay, summed panel-by-panel with a geometric-series
 *     completion;
 *   - principal values fold the symmetric window around the pole in half:
 *     E(x) = f(pole + x) + f(pole - x) is bounded (the pole's odd part cancels
 *     exactly between mirror points), so the window's principal value is the
 *     plain integral of E over [0, delta]; an innermost slice lying below the
 *     floating-point cancellation floor is integrated from E's Richardson-
 *     extrapolated limit instead of from samples.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "azvisco/errors.hpp"

namespace azvisco {

struct QuadSpec {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;
};

struct QuadResult {
    double value = 0.0;
    double err_estimate = 0.0;
    bool converged = false;
    int subdivisions = 0;
};

/// Throw when a result carries the not-converged flag.
inline const QuadResult& require_converged(const QuadResult& r, const char* what) {
    if (!r.converged)
        throw Error(ErrorCode::NotConverged,
                    std::string(what) + ": quadrature error estimate " + std::to_string(r.err_estimate) +
                        " after " + std::to_string(r.subdivisions) + " subdivisions");
    return r;
}

namespace detail {

// 7-point Gauss / 15-point Kronrod abscissae and weights on [-1, 1]
// (classical published values; Gauss nodes are the odd-indexed Kronrod ones).
inline constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct PanelEval {
    double integral = 0.0;
    double err = 0.0;
};

/// One 7/15 panel on [a, b]; never samples the endpoints.
template <class F>
PanelEval gk15(F&& f, double a, double b) {
    const double hlgth = 0.5 * (b - a);
    const double centr = 0.5 * (a + b);

    const double fc = f(centr);
    double resg = kWg[3] * fc;
    double resk = kWgk[7] * fc;
    double fv[15];
    fv[7] = fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = hlgth * kXgk[j];
        const double f1 = f(centr - dx);
        const double f2 = f(centr + dx);
        fv[j] = f1;
        fv[14 - j] = f2;
        resk += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(fv[j] - reskh) + std::abs(fv[14 - j] - reskh));
    resasc *= std::abs(hlgth);

    PanelEval out;
    out.integral = resk * hlgth;
    double abserr = std::abs((resk - resg) * hlgth);
    if (resasc != 0.0 && abserr != 0.0)
        abserr = resasc * std::min(1.0, std::pow(200.0 * abserr / resasc, 1.5));
    out.err = abserr;
    if (!std::isfinite(out.integral)) out.err = std::numeric_limits<double>::infinity();
    return out;
}

struct Panel {
    double a, b, integral, err;
};

/// Compensated (Kahan) sum of panel integrals in ascending-position order, so
/// the result does not depend on the subdivision history.
inline double ordered_sum(std::vector<Panel>& panels, double* err_total) {
    std::sort(panels.begin(), panels.end(), [](const Panel& l, const Panel& r) { return l.a < r.a; });
    double sum = 0.0, comp = 0.0, err = 0.0;
    for (const Panel& p : panels) {
        const double y = p.integral - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        err += p.err;
    }
    if (err_total) *err_total = err;
    return sum;
}

/**
 * Globally adaptive bisection over a pre-partitioned interval list.
 * Deterministic: the worst panel (largest error, leftmost on ties) is split
 * until the summed error estimate meets max(abs_tol, rel_tol * |integral|) or
 * the subdivision budget is exhausted.
 */
template <class F>
QuadResult adaptive_edges(F&& f, const std::vector<double>& edges, const QuadSpec& spec) {
    std::vector<Panel> panels;
    panels.reserve(edges.size() + 64);
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        if (!(edges[k + 1] > edges[k])) continue;
        const PanelEval pe = gk15(f, edges[k], edges[k + 1]);
        panels.push_back({edges[k], edges[k + 1], pe.integral, pe.err});
    }

    QuadResult out;
    int splits = 0;
    while (true) {
        double total = 0.0, err = 0.0;
        for (const Panel& p : panels) {
            total += p.integral;
            err += p.err;
        }
        const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
        if (err <= tol) {
            out.converged = true;
            break;
        }
        if (splits >= spec.max_subdivisions) break;

        std::size_t worst = 0;
        for (std::size_t k = 1; k < panels.size(); ++k) {
            if (panels[k].err > panels[worst].err ||
                (panels[k].err == panels[worst].err && panels[k].a < panels[worst].a))
                worst = k;
        }
        const Panel bad = panels[worst];
        const double mid = 0.5 * (bad.a + bad.b);
        if (!(mid > bad.a && mid < bad.b)) {  // interval exhausted at machine precision
            out.converged = false;
            break;
        }
        const PanelEval left = gk15(f, bad.a, mid);
        const PanelEval right = gk15(f, mid, bad.b);
        panels[worst] = {bad.a, mid, left.integral, left.err};
        panels.push_back({mid, bad.b, right.integral, right.err});
        ++splits;
    }

    out.subdivisions = splits;
    out.value = ordered_sum(panels, &out.err_estimate);
    if (!std::isfinite(out.value)) out.converged = false;
    if (out.converged) {
        const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(out.value));
        out.converged = out.err_estimate <= 2.0 * tol;
    }
    return out;
}

template <class F>
QuadResult adaptive(F&& f, double a, double b, const QuadSpec& spec) {
    return adaptive_edges(std::forward<F>(f), std::vector<double>{a, b}, spec);
}

/// Geometric ladder of edges from `hi` toward `lo_anchor = 0`, ratio 1/4.
inline std::vector<double> ladder_edges_to_zero(double hi) {
    std::vector<double> edges;
    double w = hi;
    edges.push_back(hi);
    for (int k = 0; k < 25; ++k) {
        w *= 0.25;
        edges.push_back(w);
    }
    edges.push_back(0.0);
    std::reverse(edges.begin(), edges.end());
    return edges;
}

/**
 * Head integral over [0, hi].  When the caller knows the integrand behaves as
 * rho^c with c in (-1, 0) at the origin, the substitution w = rho^{1+c}
 * removes the singularity exactly:  the transformed integrand
 * f(rho) * rho^{-c} / (1+c)  is bounded at w = 0.
 */
template <class F>
QuadResult head_integral(F&& f, double hi, double head_exponent, const QuadSpec& spec) {
    if (!(hi > 0.0)) return {0.0, 0.0, true, 0};
    if (head_exponent < 0.0 && head_exponent > -1.0) {
        const double g = 1.0 + head_exponent;
        const double wmax = std::pow(hi, g);
        // The inverse map rho = w^{1/g} probes extremely small rho when g is
        // small (strong singularities).  Below the floor the transformed
        // integrand f(rho) rho^{-c} has settled to its finite rho -> 0 limit
        // (corrections are positive powers of rho), so evaluating at the floor
        // loses nothing while keeping each power of rho inside double range.
        auto trans = [&](double w) {
            const double rho = std::max(std::pow(w, 1.0 / g), 1e-290);
            return f(rho) * std::pow(rho, -head_exponent) / g;
        };
        // a short ladder toward w = 0 seeds the adaptivity where curvature hides
        std::vector<double> edges{0.0, wmax * 1e-6, wmax * 1e-3, wmax * 0.125, wmax * 0.5, wmax};
        return adaptive_edges(trans, edges, spec);
    }
    return adaptive_edges(std::forward<F>(f), ladder_edges_to_zero(hi), spec);
}

/**
 * Tail integral over [lo, inf).
 *
 * With exponential damping e^{-rho * t_damp} the tail is covered by a
 * geometric edge ladder truncated where the damping underflows
 * (rho * t_damp = 745).  Without damping, geometric rho-panels
 * [lo*4^k, lo*4^{k+1}] are walked upward — panels of a power-decay integrand
 * shrink by a constant factor, so the walk is closed with a geometric-series
 * completion whose error is judged from the drift of the panel ratio.
 * (A u = rho/(1+rho) compactification is deliberately avoided: its panels
 * collapse onto single representable doubles near u = 1 long before a slow
 * algebraic tail has decayed.)
 */
template <class F>
QuadResult tail_integral(F&& f, double lo, double t_damp, bool exp_damped, const QuadSpec& spec) {
    if (exp_damped && t_damp > 0.0) {
        const double rho_max = std::max(745.0 / t_damp, 8.0 * lo);
        std::vector<double> edges;
        for (double e = lo; e < rho_max / 4.0; e *= 4.0) edges.push_back(e);
        edges.push_back(rho_max);
        return adaptive_edges(std::forward<F>(f), edges, spec);
    }

    QuadResult out;
    out.converged = true;
    double acc = 0.0, err = 0.0;
    double m_prev2 = 0.0, m_prev = 0.0, m_last = 0.0;  // last three panel integrals
    double a = lo;
    int quiet = 0;
    const int kMaxPanels = 40;
    for (int k = 0; k < kMaxPanels; ++k) {
        const double b = 4.0 * a;
        QuadSpec sub = spec;
        sub.max_subdivisions = std::max(16, spec.max_subdivisions / 16);
        const QuadResult panel = adaptive(f, a, b, sub);
        out.subdivisions += panel.subdivisions;
        if (!panel.converged) out.converged = false;
        acc += panel.value;
        err += panel.err_estimate;
        m_prev2 = m_prev;
        m_prev = m_last;
        m_last = panel.value;
        a = b;
        const double quiet_tol = std::max(spec.abs_tol * 0.01, spec.rel_tol * 0.01 * std::abs(acc));
        if (std::abs(panel.value) <= quiet_tol) {
            if (++quiet >= 2) break;
        } else {
            quiet = 0;
        }
    }
    // geometric completion from the last two panels; the ratio drift bounds
    // how far the tail is from an exact geometric sequence
    if (m_prev != 0.0) {
        const double rr = m_last / m_prev;
        if (rr > 0.0 && rr < 0.95) {
            const double completion = m_last * rr / (1.0 - rr);
            const double drift = (m_prev2 != 0.0) ? std::abs(rr - m_prev / m_prev2) : 0.05;
            acc += completion;
            err += std::abs(completion) * std::min(1.0, 0.01 + drift / (1.0 - rr));
        } else if (std::abs(m_last) > std::max(spec.abs_tol, spec.rel_tol * std::abs(acc))) {
            out.converged = false;  // tail did not settle into a decaying pattern
        }
    }
    if (err > 10.0 * std::max(spec.abs_tol, spec.rel_tol * std::abs(acc)))
        out.converged = false;  // completion uncertainty dominates the budget
    out.value = acc;
    out.err_estimate = err;
    return out;
}

/**
 * Principal value of f over the symmetric window [pole - delta, pole + delta]
 * around one simple pole of f.  Substituting x = rho - pole and pairing each
 * point with its mirror,
 *     PV int = int_0^delta E(x) dx,   E(x) = f(pole + x) + f(pole - x):
 * the pole's odd part cancels exactly between mirrors, so E extends
 * continuously to x = 0 and the principal value becomes an ordinary integral.
 *
 * Floating point spoils E below x ~ sqrt(eps) * scale: both mirrors evaluate
 * as huge nearly-equal numbers whose rounding noise is amplified like 1/x^2.
 * The innermost slice [0, h], h = 1e-3 delta, is therefore integrated from
 * the limit 2 h B0 with B0 = lim_{x->0} E(x)/2 obtained by a 4-level Romberg
 * scheme in x^2 at x-scales where the noise is still negligible; the
 * discarded curvature term is O(h^3), far below the tolerance targets.
 * Sampled panels never come closer to the pole than h, which keeps the
 * adaptive refinement away from the noise floor entirely.
 */
template <class F>
QuadResult pv_window(F&& f, double pole, double delta, const QuadSpec& spec) {
    auto half_even = [&](double x) { return 0.5 * (f(pole + x) + f(pole - x)); };
    const double x0 = delta / 4.0;
    double tab[4];
    for (int i = 0; i < 4; ++i) tab[i] = half_even(std::ldexp(x0, -i));
    for (int lvl = 1; lvl < 4; ++lvl) {
        const double w = std::pow(4.0, lvl);
        for (int i = 0; i + lvl < 4; ++i) tab[i] = (w * tab[i + 1] - tab[i]) / (w - 1.0);
    }
    const double B0 = tab[0];

    const double h = 1e-3 * delta;
    auto E = [&](double x) { return 2.0 * half_even(x); };
    std::vector<double> edges{h, delta / 64.0, delta / 8.0, delta / 2.0, delta};
    QuadResult out = adaptive_edges(E, edges, spec);
    out.value += 2.0 * h * B0;
    return out;
}

}  // namespace detail

/// Plain adaptive integral over the finite interval [a, b].
template <class F>
QuadResult integrate_adaptive(F&& f, double a, double b, const QuadSpec& spec = {}) {
    return detail::adaptive(std::forward<F>(f), a, b, spec);
}

/**
 * Integral of f over [0, inf).
 *
 * @param t_damp        damping time scale: the split point between head and
 *                      tail treatment is 1/t_damp (1 when t_damp == 0)
 * @param head_exponent known power behaviour rho^c of f at the origin
 *                      (c in (-1,0) engages the regularising substitution;
 *                      pass 0 for a bounded head)
 * @param exp_damped    true when f carries a factor e^{-rho * t_damp}; false
 *                      selects the algebraic-decay tail completion
 */
template <class F>
QuadResult integrate_semi_infinite(F&& f, double t_damp, const QuadSpec& spec = {},
                                   double head_exponent = 0.0, bool exp_damped = true) {
    const double split = (t_damp > 0.0) ? 1.0 / t_damp : 1.0;
    const QuadResult head = detail::head_integral(f, split, head_exponent, spec);
    const QuadResult tail = detail::tail_integral(f, split, t_damp, exp_damped, spec);
    QuadResult out;
    out.value = head.value + tail.value;
    out.err_estimate = head.err_estimate + tail.err_estimate;
    out.converged = head.converged && tail.converged;
    out.subdivisions = head.subdivisions + tail.subdivisions;
    return out;
}

/**
 * Principal value of f over [0, inf) where f has one simple pole on the
 * positive axis.  The symmetric window [pole - delta, pole + delta] is folded
 * onto the pole (see detail::pv_window), where the singular odd part cancels
 * exactly between mirror points; the two outer pieces are integrated as
 * usual.
 */
template <class F>
QuadResult integrate_principal_value(F&& f, double pole, double t_damp, const QuadSpec& spec = {},
                                     double head_exponent = 0.0, bool exp_damped = true) {
    if (!(pole > 0.0) || !std::isfinite(pole))
        throw Error(ErrorCode::PoleOnBoundary, "principal-value pole must be strictly positive");
    const double split = (t_damp > 0.0) ? 1.0 / t_damp : 1.0;
    if (pole < 1e-12 * split)
        throw Error(ErrorCode::PoleOnBoundary, "principal-value pole too close to the origin");

    const double delta = 0.5 * pole;

    // window [pole - delta, pole + delta], regularised by the extrapolated
    // pole strength (see detail::pv_window)
    const QuadResult window = detail::pv_window(f, pole, delta, spec);

    // head [0, pole - delta]
    const QuadResult head = detail::head_integral(f, pole - delta, head_exponent, spec);

    // tail [pole + delta, inf)
    const QuadResult tail = detail::tail_integral(f, pole + delta, t_damp, exp_damped, spec);

    QuadResult out;
    out.value = head.value + window.value + tail.value;
    out.err_estimate = head.err_estimate + window.err_estimate + tail.err_estimate;
    out.converged = head.converged && window.converged && tail.converged;
    out.subdivisions = head.subdivisions + window.subdivisions + tail.subdivisions;
    return out;
}

/**
 * Fixed-contour (Talbot) inverse Laplace transform, M = 64 nodes:
 *
 *   r = 2M / (5t),   s_k = r * theta_k (cot theta_k + i),   theta_k = k pi / M,
 *   f(t) = (r/M) [ F(r) e^{rt} / 2
 *                  + sum_{k=1}^{M-1} Re( e^{t s_k} F(s_k) (1 + i sigma_k) ) ],
 *   sigma_k = theta_k + (theta_k cot theta_k - 1) cot theta_k.
 *
 * Used as an independent cross-check of the time-domain representations; the
 * contour assumes all singularities sit to its left, which holds for the
 * transfer functions handled here.
 *
 * The transform is evaluated in extended precision (complex<long double>):
 * with r*t = 2M/5 = 25.6 the contour terms reach ~1e9 before cancelling to an
 * O(1) result, so a plain double evaluation loses ~10 digits and floors near
 * 1e-6 accuracy; 80-bit arithmetic restores an absolute floor of a few 1e-9
 * (independent of t, since r*t is fixed).  Callers wrapping a
 * double-precision transform inherit that double's ~1e-6 floor, which still
 * sits well inside the 1e-5 cross-check budget the oracle is used for.
 */
inline double bromwich_oracle(
    const std::function<std::complex<long double>(std::complex<long double>)>& F, double t) {
    if (!(t > 0.0) || !std::isfinite(t))
        throw Error(ErrorCode::ContourFailure, "inversion time must be positive");
    constexpr int M = 64;
    const long double kPi = 3.141592653589793238462643383279502884L;
    const long double tl = static_cast<long double>(t);
    const long double r = 2.0L * M / (5.0L * tl);

    const std::complex<long double> F0 = F(std::complex<long double>(r, 0.0L));
    if (!std::isfinite(static_cast<double>(F0.real())) ||
        !std::isfinite(static_cast<double>(F0.imag())))
        throw Error(ErrorCode::ContourFailure, "transform not finite on the contour");
    long double acc = 0.5L * F0.real() * std::exp(r * tl);
    for (int k = 1; k < M; ++k) {
        const long double th = k * kPi / M;
        const long double cot = std::cos(th) / std::sin(th);
        const std::complex<long double> s(r * th * cot, r * th);
        const long double sigma = th + (th * cot - 1.0L) * cot;
        const std::complex<long double> Fs = F(s);
        if (!std::isfinite(static_cast<double>(Fs.real())) ||
            !std::isfinite(static_cast<double>(Fs.imag())))
            throw Error(ErrorCode::ContourFailure, "transform not finite on the contour");
        const std::complex<long double> w =
            std::exp(s * tl) * Fs * std::complex<long double>(1.0L, sigma);
        acc += w.real();
    }
    const double out = static_cast<double>(acc * r / M);
    if (!std::isfinite(out)) throw Error(ErrorCode::ContourFailure, "contour sum overflowed");
    return out;
}

}  // namespace azvisco
