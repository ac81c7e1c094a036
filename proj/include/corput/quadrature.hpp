#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "corput/core.hpp"
#include "corput/extrema.hpp"
#include "corput/reflect.hpp"

namespace corput {

struct QuadratureResult {
    Complex value{0.0, 0.0};
    double abs_error_estimate = 0.0;
    int panels_used = 1;
    double truncation_tail_bound = 0.0;
    bool converged = true;
};

struct NormResult {
    double value = 0.0;
    bool converged = true;
};

inline constexpr double kDefaultCompactTol = 1e-10;
inline constexpr double kDefaultLineTol = 1e-6;
inline constexpr long kPanelEvalBudget = 2'000'000;

namespace detail {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
inline constexpr double kGK15Nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double kK15Weights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double kG7Weights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class Func>
using scalar_of = std::decay_t<decltype(std::declval<Func>()(0.0))>;

template <class Func, class Scalar = scalar_of<Func>>
struct PanelEval {
    Scalar value{};
    double error = 0.0;
};

template <class Func, class Scalar = scalar_of<Func>>
PanelEval<Func> g7k15_panel(const Func& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const Scalar f0 = f(mid);
    Scalar k15 = kK15Weights[7] * f0;
    Scalar g7 = kG7Weights[3] * f0;
    for (int i = 0; i < 7; ++i) {
        const Scalar fp = f(mid + half * kGK15Nodes[i]);
        const Scalar fm = f(mid - half * kGK15Nodes[i]);
        const Scalar pair = fp + fm;
        k15 += kK15Weights[i] * pair;
        if (i == 1) g7 += kG7Weights[0] * pair;
        if (i == 3) g7 += kG7Weights[1] * pair;
        if (i == 5) g7 += kG7Weights[2] * pair;
    }
    k15 *= half;
    g7 *= half;
    return PanelEval<Func>{k15, std::abs(k15 - g7)};
}

template <class Scalar>
struct Panel {
    double a = 0.0;
    double b = 0.0;
    Scalar value{};
    double error = 0.0;
    bool operator<(const Panel& other) const { return error < other.error; }
};

template <class Scalar>
struct AdaptiveResult {
    Scalar value{};
    double error = 0.0;
    int panels = 0;
    long evals = 0;
    bool converged = true;
};

/// Adaptive Gauss-Kronrod integration over [a, b] with an oscillation-aware
/// uniform seed. The error estimate is the raw |K15 - G7| sum, conservative by
/// construction. Open-type panel rule: endpoints are never evaluated.
template <class Func, class Scalar = scalar_of<Func>>
AdaptiveResult<Scalar> adaptive_integrate(const Func& f, double a, double b, double tol,
                                          long max_evals = kPanelEvalBudget, int seed_panels = 8) {
    AdaptiveResult<Scalar> result;
    if (!(b > a)) return result;
    seed_panels = std::clamp(seed_panels, 1, static_cast<int>(max_evals / 30) + 1);

    std::vector<Panel<Scalar>> active;
    std::vector<Panel<Scalar>> frozen;
    active.reserve(static_cast<size_t>(seed_panels) + 64);
    double total_error = 0.0;
    long evals = 0;

    for (int k = 0; k < seed_panels; ++k) {
        const double pa = a + (b - a) * static_cast<double>(k) / seed_panels;
        const double pb = (k + 1 == seed_panels) ? b : a + (b - a) * static_cast<double>(k + 1) / seed_panels;
        const auto eval = g7k15_panel(f, pa, pb);
        evals += 15;
        active.push_back(Panel<Scalar>{pa, pb, eval.value, eval.error});
        total_error += eval.error;
    }
    std::make_heap(active.begin(), active.end());

    const double min_width = 64.0 * std::numeric_limits<double>::epsilon() *
                             std::max({std::abs(a), std::abs(b), 1.0});
    while (total_error > tol && !active.empty() && evals + 30 <= max_evals) {
        std::pop_heap(active.begin(), active.end());
        const Panel<Scalar> worst = active.back();
        active.pop_back();
        if (worst.b - worst.a <= min_width) {
            frozen.push_back(worst);
            continue;
        }
        const double mid = 0.5 * (worst.a + worst.b);
        const auto left = g7k15_panel(f, worst.a, mid);
        const auto right = g7k15_panel(f, mid, worst.b);
        evals += 30;
        total_error += left.error + right.error - worst.error;
        active.push_back(Panel<Scalar>{worst.a, mid, left.value, left.error});
        std::push_heap(active.begin(), active.end());
        active.push_back(Panel<Scalar>{mid, worst.b, right.value, right.error});
        std::push_heap(active.begin(), active.end());
    }

    Scalar sum{};
    for (const auto& p : frozen) sum += p.value;
    for (const auto& p : active) sum += p.value;
    result.value = sum;
    result.error = std::max(total_error, 0.0);
    result.panels = static_cast<int>(active.size() + frozen.size());
    result.evals = evals;
    result.converged = result.error <= tol;
    return result;
}

/// Total variation of the phase over the band, using the one-signed structure
/// of psi' on each side of the stationary point.
inline double phase_total_variation(const PhaseDescriptor& ph, const Interval& band) {
    const double pc = std::clamp(ph.p0, band.lo, band.hi);
    const double va = ph.psi.value(band.lo);
    const double vc = ph.psi.value(pc);
    const double vb = ph.psi.value(band.hi);
    return std::abs(vc - va) + std::abs(vb - vc);
}

inline int oscillation_seed(double omega, double total_variation) {
    const double periods = omega * total_variation / (2.0 * kPi);
    return std::clamp(static_cast<int>(std::ceil(periods)) + 8, 8, 50000);
}

}  // namespace detail

/// Integral of (p-p1)^(mu-1) u~(p) e^{i omega psi(p)} over [p1, p2].
/// The endpoint singularity is absorbed exactly by the substitution
/// q = (p-p1)^mu, so the evaluated integrand is bounded; panels are seeded
/// from the oscillation count omega * TV(psi) / 2pi and refined adaptively.
inline QuadratureResult oscillatory_integral(const SingularAmplitude& a, const PhaseDescriptor& ph,
                                             double omega, double tol = kDefaultCompactTol,
                                             long max_evals = kPanelEvalBudget) {
    if (!(omega > 0.0)) throw std::invalid_argument("oscillatory_integral: omega must be positive");
    if (!(tol > 0.0)) throw std::invalid_argument("oscillatory_integral: tol must be positive");
    if (!(a.p1 < a.p2)) throw std::invalid_argument("oscillatory_integral: empty band");

    const double width = a.p2 - a.p1;
    const double q_max = std::pow(width, a.mu);
    const double inv_mu = 1.0 / a.mu;
    const double p1 = a.p1;
    const double p2 = a.p2;
    const auto regular = a.regular_part.value;
    const auto psi = ph.psi.value;
    auto integrand = [=](double q) -> Complex {
        const double p = std::min(p1 + std::pow(q, inv_mu), p2);
        return inv_mu * regular(p) * std::exp(Complex(0.0, omega * psi(p)));
    };

    const int seed = detail::oscillation_seed(omega, detail::phase_total_variation(ph, a.band()));
    const auto r = detail::adaptive_integrate(integrand, 0.0, q_max, tol, max_evals, seed);
    return QuadratureResult{r.value, r.error, std::max(r.panels, 1), 0.0, r.converged};
}

/// Density |p - singularity|^(mu-1) u~(p) on the whole line with the tail
/// envelope |density(p)| <= tail_scale * |p - singularity|^(mu-1-tail_decay).
struct LineDensity {
    double singularity = 0.0;
    double mu = 1.0;
    ComplexFunction regular;
    double tail_scale = 1.0;
    double tail_decay = 2.0;
};

/// Truncation radius making the analytic tail bound
/// 2 * tail_scale * P^(mu - tail_decay) / (tail_decay - mu) <= tol / 2.
inline double line_truncation_radius(const LineDensity& d, double tol, double min_radius = 0.0) {
    if (!(d.tail_decay > d.mu))
        throw std::invalid_argument("oscillatory_integral_line: non-integrable datum (alpha <= mu)");
    if (!(tol > 0.0)) throw std::invalid_argument("line_truncation_radius: tol must be positive");
    const double gap = d.tail_decay - d.mu;
    const double m = std::max(d.tail_scale, std::numeric_limits<double>::min());
    const double p_primary = std::pow(2.0 * m / tol, 1.0 / gap);
    const double p_secondary = std::pow(4.0 * m / (gap * tol), 1.0 / gap);
    return std::max({p_primary, p_secondary, min_radius, 1.0});
}

inline double line_tail_bound(const LineDensity& d, double radius) {
    const double gap = d.tail_decay - d.mu;
    return 2.0 * d.tail_scale * std::pow(radius, -gap) / gap;
}

/// Line integral of density(p) e^{i omega psi(p)}: the domain is truncated at
/// the analytic tail radius, and the interior is split at the singularity into
/// two compact singular integrals (the left one through reflect_band).
inline QuadratureResult oscillatory_integral_line(const LineDensity& d, const PhaseDescriptor& ph,
                                                  double omega, double tol = kDefaultLineTol,
                                                  double min_radius = 0.0,
                                                  long max_evals = kPanelEvalBudget) {
    if (!(omega > 0.0)) throw std::invalid_argument("oscillatory_integral_line: omega must be positive");
    const double radius = line_truncation_radius(d, tol, min_radius);
    const double tail = line_tail_bound(d, radius);
    const double piece_tol = 0.25 * tol;

    SingularAmplitude right{d.singularity, d.singularity + radius, d.mu, d.regular};
    const QuadratureResult qr = oscillatory_integral(right, ph, omega, piece_tol, max_evals / 2);

    SingularAmplitude left_mirror{d.singularity - radius, d.singularity, d.mu, d.regular};
    const auto [left_canon, ph_canon] = reflect_band(left_mirror, ph);
    const QuadratureResult ql = oscillatory_integral(left_canon, ph_canon, omega, piece_tol, max_evals / 2);

    QuadratureResult out;
    out.value = qr.value + ql.value;
    out.abs_error_estimate = qr.abs_error_estimate + ql.abs_error_estimate;
    out.panels_used = qr.panels_used + ql.panels_used;
    out.truncation_tail_bound = tail;
    out.converged = qr.converged && ql.converged;
    return out;
}

/// Grid-plus-refinement maximum of |h|; never below the grid maximum.
inline double sup_norm(const std::function<double(double)>& h, const Interval& iv, int probes = 257) {
    if (probes < 64) throw std::invalid_argument("sup_norm: probes must be >= 64");
    auto magnitude = [&h](double p) {
        const double v = h(p);
        if (!std::isfinite(v))
            throw std::runtime_error("sup_norm: non-finite sample at p=" + std::to_string(p));
        return std::abs(v);
    };
    return refined_maximum(magnitude, iv, probes).value;
}

inline double sup_norm(const ComplexFunction& h, const Interval& iv, int probes = 257) {
    if (probes < 64) throw std::invalid_argument("sup_norm: probes must be >= 64");
    auto magnitude = [&h](double p) {
        const Complex v = h.value(p);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::runtime_error("sup_norm: non-finite sample at p=" + std::to_string(p));
        return std::abs(v);
    };
    return refined_maximum(magnitude, iv, probes).value;
}

inline double sup_norm(const RealFunction& h, const Interval& iv, int probes = 257) {
    return sup_norm(h.value, iv, probes);
}

/// Adaptive quadrature of |h'| over the interval; equals the total variation
/// for piecewise-monotone h.
template <class Scalar>
NormResult l1_norm_derivative(const FunctionHandle<Scalar>& h, const Interval& iv,
                              double tol = 1e-10, long max_evals = kPanelEvalBudget) {
    if (!h.has_derivative())
        throw std::invalid_argument("l1_norm_derivative: handle lacks a derivative map");
    auto integrand = [&h](double p) { return std::abs(h.derivative(p)); };
    const auto r = detail::adaptive_integrate(integrand, iv.lo, iv.hi, tol, max_evals, 16);
    return NormResult{r.value, r.converged};
}

/// Refined minimum of |psi'| on the closed interval; errors out when any
/// sample sits at stationary-point scale.
inline double min_abs_derivative(const PhaseDescriptor& ph, const Interval& iv, int probes = 257) {
    if (probes < 16) throw std::invalid_argument("min_abs_derivative: probes must be >= 16");
    double scale = 0.0;
    for (double p : probe_points(iv, probes)) {
        const double v = std::abs(ph.psi.derivative(p));
        if (!std::isfinite(v))
            throw std::runtime_error("min_abs_derivative: non-finite sample at p=" + std::to_string(p));
        scale = std::max(scale, v);
    }
    auto magnitude = [&ph](double p) { return std::abs(ph.psi.derivative(p)); };
    const ExtremumResult r = refined_minimum(magnitude, iv, probes);
    if (r.value < 1e-14 * std::max(1.0, scale))
        throw std::domain_error("min_abs_derivative: stationary point inside interval");
    return r.value;
}

}  // namespace corput
