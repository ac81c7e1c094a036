#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "corput/certificates.hpp"
#include "corput/core.hpp"
#include "corput/decay_fit.hpp"
#include "corput/quadrature.hpp"
#include "corput/validation.hpp"

namespace corput {

/// Datum with compact frequency support [p1, p2] and a left-edge singularity.
struct BandDatum {
    SingularAmplitude amplitude;
};

/// Datum on the whole frequency line, singular at `p1`:
/// density(p) = |p - p1|^(mu-1) * regular(p), regular bounded with integrable
/// derivative. Declared global norms feed the cone constants; the tail
/// envelope (scale * |p-p1|^(mu-1-decay)) drives the evaluation truncation.
struct LineSingularDatum {
    double p1 = 0.0;
    double mu = 1.0;
    ComplexFunction regular;
    double sup_u = 1.0;       // sup over the line of |regular|
    double l1_du = 0.0;       // integral over the line of |regular'|
    double tail_scale = 1.0;
    double tail_decay = 2.0;
};

/// Datum singular at 0 with quantified decay: |regular(p)| <= envelope_scale
/// (1+p^2)^(-alpha/2) everywhere, and band-wise derivative decay
/// ||regular'||_{L1(n,n+1)} <= band_l1_scale * |n|^-alpha for |n| >= r.
struct WeightedDatum {
    double mu = 0.5;
    double alpha = 4.0;
    double r = 2.0;
    double envelope_scale = 1.0;  // M
    double band_l1_scale = 1.0;   // M'
    ComplexFunction regular;
    double sup_u = 1.0;
    double l1_du = 0.0;
};

using InitialDatum = std::variant<BandDatum, LineSingularDatum, WeightedDatum>;

enum class ConeEstimateId {
    band_cone,                // slow rate inside the band cone, faster outside
    band_linfty,              // L-infinity combination of the band-cone pair
    singular_direction_cone,  // narrow cone around the singular direction
    off_axis_cone,            // cone away from the singular direction
    global_linfty,            // whole-line L-infinity via band decomposition
    concentration,            // complement of the velocity-range cone
};

inline std::string to_string(ConeEstimateId id) {
    switch (id) {
        case ConeEstimateId::band_cone: return "band-cone";
        case ConeEstimateId::band_linfty: return "band-linfty";
        case ConeEstimateId::singular_direction_cone: return "singular-direction-cone";
        case ConeEstimateId::off_axis_cone: return "off-axis-cone";
        case ConeEstimateId::global_linfty: return "global-linfty";
        case ConeEstimateId::concentration: return "concentration";
    }
    return "unknown";
}

/// Named constants with their decay powers and the cone they certify.
struct ConeConstantSet {
    ConeEstimateId id = ConeEstimateId::band_cone;
    std::map<std::string, double> constants;
    std::map<std::string, double> exponents;
    SpaceTimeCone cone;
    std::string note;

    double bound(const std::string& key, double t) const {
        return constants.at(key) * std::pow(t, exponents.at(key));
    }
    /// Sum of all terms at time t (for multi-term right-hand sides).
    double total_bound(double t) const {
        double sum = 0.0;
        for (const auto& [key, c] : constants) sum += c * std::pow(t, exponents.at(key));
        return sum;
    }
};

namespace detail {

inline double mu_of(const InitialDatum& d) {
    return std::visit([](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, BandDatum>) return v.amplitude.mu;
        else return v.mu;
    }, d);
}

inline double singularity_of(const InitialDatum& d) {
    return std::visit([](const auto& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, BandDatum>) return v.amplitude.p1;
        else if constexpr (std::is_same_v<T, LineSingularDatum>) return v.p1;
        else return 0.0;
    }, d);
}

/// Frequency-side density |p - p1|^(mu-1) * regular(p) with its derivative.
inline ComplexFunction line_density_handle(double p1, double mu, const ComplexFunction& regular) {
    ComplexFunction out;
    auto reg_value = regular.value;
    out.value = [p1, mu, reg_value](double p) -> Complex {
        return std::pow(std::abs(p - p1), mu - 1.0) * reg_value(p);
    };
    if (regular.has_derivative()) {
        auto reg_deriv = regular.derivative;
        out.derivative = [p1, mu, reg_value, reg_deriv](double p) -> Complex {
            const double d = p - p1;
            if (mu == 1.0) return reg_deriv(p);
            const double sign = d >= 0.0 ? 1.0 : -1.0;
            return (mu - 1.0) * std::pow(std::abs(d), mu - 2.0) * sign * reg_value(p) +
                   std::pow(std::abs(d), mu - 1.0) * reg_deriv(p);
        };
    }
    return out;
}

inline LineDensity to_line_density(const LineSingularDatum& d) {
    return LineDensity{d.p1, d.mu, d.regular, d.tail_scale, d.tail_decay};
}

inline LineDensity to_line_density(const WeightedDatum& d) {
    return LineDensity{0.0, d.mu, d.regular, d.envelope_scale, d.alpha};
}

inline double solve_slope_equals(const SymbolDescriptor& s, double v, double lo, double hi) {
    double flo = s.slope(lo) - v;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (!(hi - lo > 1e-15 * std::max({1.0, std::abs(lo), std::abs(hi)}))) break;
        const double fm = s.slope(mid) - v;
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

/// Datum-side validation of the three admission conditions.
inline ValidationReport validate_datum(const InitialDatum& d, int probes = 257) {
    ValidationReport report;
    if (const auto* band = std::get_if<BandDatum>(&d)) return validate_amplitude(band->amplitude, probes);

    if (const auto* line = std::get_if<LineSingularDatum>(&d)) {
        if (!(line->mu > 0.0) || !(line->mu <= 1.0))
            report.violations.push_back({"mu outside (0,1]", line->p1, line->mu});
        if (line->mu != 1.0 && std::abs(line->regular.value(line->p1)) <= 0.0)
            report.violations.push_back({"regular part vanishes at the singularity with mu != 1",
                                         line->p1, 0.0});
        const Interval window{line->p1 - 25.0, line->p1 + 25.0};
        for (double p : probe_points(window, probes)) {
            const Complex v = line->regular.value(p);
            detail::check_finite(report, "regular part", v, p);
            if (std::abs(v) > line->sup_u * (1.0 + 1e-9))
                report.violations.push_back({"declared sup norm exceeded", p, std::abs(v)});
            if (p != line->p1) {
                const double envelope =
                    line->tail_scale * std::pow(std::abs(p - line->p1), line->mu - 1.0 - line->tail_decay);
                const double density = std::pow(std::abs(p - line->p1), line->mu - 1.0) * std::abs(v);
                if (density > envelope * (1.0 + 1e-9) && std::abs(p - line->p1) >= 1.0)
                    report.violations.push_back({"declared tail envelope exceeded", p, density - envelope});
            }
        }
        return report;
    }

    const auto& w = std::get<WeightedDatum>(d);
    if (!(w.mu > 0.0) || !(w.mu <= 1.0)) report.violations.push_back({"mu outside (0,1]", 0.0, w.mu});
    if (w.mu != 1.0 && std::abs(w.regular.value(0.0)) <= 0.0)
        report.violations.push_back({"regular part vanishes at the singularity with mu != 1", 0.0, 0.0});
    for (double p : probe_points(Interval{-50.0, 50.0}, probes)) {
        const Complex v = w.regular.value(p);
        detail::check_finite(report, "regular part", v, p);
        const double cap = w.envelope_scale * std::pow(1.0 + p * p, -0.5 * w.alpha);
        if (std::abs(v) > cap * (1.0 + 1e-12))
            report.violations.push_back({"weight envelope exceeded", p, std::abs(v) - cap});
    }
    if (w.regular.has_derivative()) {
        const long long r0 = static_cast<long long>(std::ceil(w.r));
        for (long long mag : {r0, r0 + 1, r0 + 2, r0 + 5, r0 + 10, r0 + 46, r0 + 94}) {
            for (long long n : {mag, -mag - 1}) {
                const NormResult l1 = l1_norm_derivative(
                    w.regular, Interval{static_cast<double>(n), static_cast<double>(n + 1)}, 1e-12);
                const double cap = w.band_l1_scale * std::pow(std::abs(static_cast<double>(n)), -w.alpha);
                if (l1.value > cap * (1.0 + 1e-9))
                    report.violations.push_back({"band-wise derivative decay exceeded",
                                                 static_cast<double>(n), l1.value - cap});
            }
        }
    }
    return report;
}

/// Phase p -> v p - f(p) of the time-factored solution formula, with the
/// stationary point located by bisection when f' attains v near the
/// integration range (synthetic exterior placement otherwise).
inline PhaseDescriptor dispersive_phase(const SymbolDescriptor& s, double velocity,
                                        const Interval& integration_range) {
    const double pad = std::max(1.0, 0.05 * integration_range.width());
    const double lo = integration_range.lo - pad;
    const double hi = integration_range.hi + pad;

    double p0;
    if (velocity <= s.slope(lo)) p0 = lo - pad;
    else if (velocity >= s.slope(hi)) p0 = hi + pad;
    else p0 = detail::solve_slope_equals(s, velocity, lo, hi);

    PhaseDescriptor ph;
    ph.p0 = p0;
    ph.rho = 2.0;
    const auto f = s.f.value;
    const auto df = s.f.derivative;
    const auto ddf = s.f.second_derivative;
    ph.psi.value = [velocity, f](double p) { return velocity * p - f(p); };
    ph.psi.derivative = [velocity, df](double p) { return velocity - df(p); };
    ph.psi.second_derivative = [ddf](double p) { return -ddf(p); };
    ph.psi.domain = s.f.domain;
    ph.nondegenerate_part.value = [velocity, df, ddf, p0](double p) {
        const double gap = std::abs(p - p0);
        if (gap < 1e-300) return -ddf(p0);
        return (velocity - df(p)) / gap;
    };
    ph.nondegenerate_part.domain = s.f.domain;
    return ph;
}

/// u(t, x) = (1/2pi) * integral of density(p) e^{i t ((x/t) p - f(p))} dp.
/// Returns the full quadrature record; the complex solution value is .value.
inline QuadratureResult solution_value(const InitialDatum& d, const SymbolDescriptor& s, double t,
                                       double x, std::optional<double> tol = std::nullopt) {
    if (!(t > 0.0)) throw std::invalid_argument("solution_value: t must be positive");
    const double v = x / t;
    QuadratureResult raw;
    if (const auto* band = std::get_if<BandDatum>(&d)) {
        const double quad_tol = tol.value_or(kDefaultCompactTol) * 2.0 * kPi;
        const PhaseDescriptor ph = dispersive_phase(s, v, band->amplitude.band());
        raw = oscillatory_integral(band->amplitude, ph, t, quad_tol);
    } else {
        const double quad_tol = tol.value_or(kDefaultLineTol) * 2.0 * kPi;
        const LineDensity density = std::holds_alternative<LineSingularDatum>(d)
                                        ? detail::to_line_density(std::get<LineSingularDatum>(d))
                                        : detail::to_line_density(std::get<WeightedDatum>(d));
        const double radius = line_truncation_radius(density, quad_tol);
        const PhaseDescriptor ph = dispersive_phase(
            s, v, Interval{density.singularity - radius, density.singularity + radius});
        raw = oscillatory_integral_line(density, ph, t, quad_tol);
    }
    const double scale = 1.0 / (2.0 * kPi);
    raw.value *= scale;
    raw.abs_error_estimate *= scale;
    raw.truncation_tail_bound *= scale;
    return raw;
}

/// Cone spanned by the group velocities of the padded band [q1, q2].
inline SpaceTimeCone cone_of_band(const SymbolDescriptor& s, double q1, double q2) {
    if (!(q1 < q2)) throw std::invalid_argument("cone_of_band: requires q1 < q2");
    return SpaceTimeCone::bounded(s.slope(q1), s.slope(q2));
}

/// Band-cone pair: c_inside at rate -mu/2 inside the cone of [q1, q2],
/// c_outside at rate -mu on its complement.
inline ConeConstantSet band_constants(const BandDatum& d, const SymbolDescriptor& s, double q1,
                                      double q2, int probes = 257) {
    const auto& a = d.amplitude;
    if (!(q1 < a.p1) || !(a.p2 < q2))
        throw std::invalid_argument("band_constants: band must be strictly inside [q1, q2]");
    const double sup_u = sup_norm(a.regular_part, a.band(), std::max(probes, 64));
    const double l1_du = l1_norm_derivative(a.regular_part, a.band()).value;
    const double m = certified_minimum([&s](double p) { return s.curvature(p); }, a.band(), probes);
    if (!(m > 0.0)) throw std::invalid_argument("band_constants: curvature floor vanished on the band");

    const double c_inside =
        (1.0 / (2.0 * kPi)) * (3.0 / a.mu) * sup_u + (1.0 / kPi) * (4.0 * sup_u + l1_du) / m;
    const double gap_hi = s.slope(q2) - s.slope(a.p2);
    const double gap_lo = s.slope(a.p1) - s.slope(q1);
    auto half = [&](double gap) {
        return (1.0 / (2.0 * kPi)) * (1.0 / a.mu) * sup_u +
               (1.0 / (2.0 * kPi)) * (4.0 * sup_u + l1_du) / gap;
    };
    const bool zero = sup_u == 0.0 && l1_du == 0.0;
    const double c_outside = zero ? 0.0 : half(gap_hi) + half(gap_lo);

    ConeConstantSet out;
    out.id = ConeEstimateId::band_cone;
    out.constants = {{"c_inside", zero ? 0.0 : c_inside}, {"c_outside", c_outside}};
    out.exponents = {{"c_inside", -a.mu / 2.0}, {"c_outside", -a.mu}};
    out.cone = cone_of_band(s, q1, q2);
    return out;
}

/// L-infinity bound c_inside t^(-mu/2) + c_outside t^(-mu).
inline double linfty_band_bound(const BandDatum& d, const SymbolDescriptor& s, double q1, double q2,
                                double t, int probes = 257) {
    if (!(t > 0.0)) throw std::invalid_argument("linfty_band_bound: t must be positive");
    const ConeConstantSet set = band_constants(d, s, q1, q2, probes);
    return set.bound("c_inside", t) + set.bound("c_outside", t);
}

/// Merged form (c_inside + c_outside) t^(-mu/2), valid for t >= 1.
inline double linfty_band_bound_merged(const BandDatum& d, const SymbolDescriptor& s, double q1,
                                       double q2, double t, int probes = 257) {
    if (!(t >= 1.0)) throw std::invalid_argument("linfty_band_bound_merged: requires t >= 1");
    const ConeConstantSet set = band_constants(d, s, q1, q2, probes);
    return (set.constants.at("c_inside") + set.constants.at("c_outside")) *
           std::pow(t, set.exponents.at("c_inside"));
}

/// Narrow cone around the singular direction: c1 at rate -mu/2 plus c2 at
/// rate -1, on the cone of velocities f'(p1 - eps) .. f'(p1 + eps).
inline ConeConstantSet narrow_cone_constants(const LineSingularDatum& d, const SymbolDescriptor& s,
                                             double eta, double eps, int probes = 257) {
    if (!(eta > eps) || !(eps > 0.0))
        throw std::invalid_argument("narrow_cone_constants: requires eta > eps > 0");
    const Interval left{d.p1 - eta, d.p1};
    const Interval right{d.p1, d.p1 + eta};
    auto piece = [&](const Interval& iv) {
        const double sup_u = sup_norm(d.regular, iv, std::max(probes, 64));
        const double l1_du = l1_norm_derivative(d.regular, iv).value;
        const double m = certified_minimum([&s](double p) { return s.curvature(p); }, iv, probes);
        return (1.0 / (2.0 * kPi)) * (3.0 / d.mu) * sup_u +
               (1.0 / kPi) * (4.0 * sup_u + l1_du) / m;
    };
    const double c1 = piece(left) + piece(right);

    const double gap_hi = s.slope(d.p1 + eta) - s.slope(d.p1 + eps);
    const double gap_lo = s.slope(d.p1 - eps) - s.slope(d.p1 - eta);
    const double line_factor =
        (1.0 / (2.0 * kPi)) * std::pow(eta, d.mu - 1.0) * (4.0 * d.sup_u + d.l1_du);
    const double c2 = line_factor * (1.0 / gap_hi + 1.0 / gap_lo);

    ConeConstantSet out;
    out.id = ConeEstimateId::singular_direction_cone;
    out.constants = {{"c1", c1}, {"c2", c2}};
    out.exponents = {{"c1", -d.mu / 2.0}, {"c2", -1.0}};
    out.cone = SpaceTimeCone::bounded(s.slope(d.p1 - eps), s.slope(d.p1 + eps));
    return out;
}

inline double offcone_default_eta(const LineSingularDatum& d, double q1, double q2) {
    return 0.5 * std::min(std::abs(q1 - d.p1), std::abs(d.p1 - q2));
}

/// Cone away from the singular direction: c1 at -1/2, c2 at -mu, c3 at -1 on
/// the cone of [q1, q2]; the singularity must sit outside [q1, q2].
inline ConeConstantSet offcone_constants(const LineSingularDatum& d, const SymbolDescriptor& s,
                                         double q1, double q2, double eta, int probes = 257) {
    if (!(q1 < q2)) throw std::invalid_argument("offcone_constants: requires q1 < q2");
    if (d.p1 >= q1 && d.p1 <= q2)
        throw std::invalid_argument("offcone_constants: singularity inside [q1, q2]");
    if (!(eta > 0.0) || !(eta < std::min(std::abs(q1 - d.p1), std::abs(d.p1 - q2))))
        throw std::invalid_argument("offcone_constants: eta outside (0, dist(p1, [q1,q2]))");

    const double m1 = certified_minimum([&s](double p) { return s.curvature(p); },
                                        Interval{q1 - eta, q2 + eta}, probes);
    const double gap_lo = s.slope(q1) - s.slope(q1 - eta);
    const double gap_hi = s.slope(q2 + eta) - s.slope(q2);
    const double quad_norms = 4.0 * d.sup_u + d.l1_du;

    double c1, c2, c3;
    if (d.p1 < q1) {
        c1 = (std::pow(q1 - eta - d.p1, d.mu - 1.0) / kPi) * (d.sup_u + quad_norms / m1);
        c2 = (1.0 / kPi) * ((1.0 / d.mu) * d.sup_u + quad_norms / gap_lo);
        c3 = (std::pow(q2 + eta - d.p1, d.mu - 1.0) / (2.0 * kPi)) * quad_norms / gap_hi;
    } else {
        c1 = (std::pow(d.p1 - q2 - eta, d.mu - 1.0) / kPi) * (d.sup_u + quad_norms / m1);
        c2 = (1.0 / kPi) * ((1.0 / d.mu) * d.sup_u + quad_norms / gap_hi);
        c3 = (std::pow(d.p1 - q1 + eta, d.mu - 1.0) / (2.0 * kPi)) * quad_norms / gap_lo;
    }

    ConeConstantSet out;
    out.id = ConeEstimateId::off_axis_cone;
    out.constants = {{"c1", c1}, {"c2", c2}, {"c3", c3}};
    out.exponents = {{"c1", -0.5}, {"c2", -d.mu}, {"c3", -1.0}};
    out.cone = SpaceTimeCone::bounded(s.slope(q1), s.slope(q2));
    return out;
}

/// Gap f'(hi) - f'(lo) evaluated as the curvature mass over [lo, hi]. Direct
/// slope differences cancel catastrophically once f' saturates (gaps of order
/// |n|^-3 between values near 1); the integral form keeps full precision.
inline double slope_gap(const SymbolDescriptor& s, double lo, double hi) {
    const auto panel = detail::g7k15_panel([&s](double p) { return s.curvature(p); }, lo, hi);
    if (!(panel.value > 0.0))
        throw std::invalid_argument("slope_gap: curvature mass not positive");
    return panel.value;
}

namespace detail {

inline int decomposition_start(const SymbolDescriptor& s) {
    if (!s.lower_envelope)
        throw std::invalid_argument("band decomposition: symbol lacks a lower curvature envelope");
    return static_cast<int>(std::ceil(s.lower_envelope->radius)) + 1;
}

inline void require_band_decay_reach(const WeightedDatum& d, int start, const char* who) {
    if (!(d.r <= static_cast<double>(start)))
        throw std::invalid_argument(std::string(who) +
                                    ": band-wise decay must reach the decomposition start");
}

struct HalfRangeNorms {
    double sup_u = 0.0;
    double l1_du = 0.0;
};

inline HalfRangeNorms half_range_norms(const WeightedDatum& d, const Interval& iv, int probes) {
    return HalfRangeNorms{sup_norm(d.regular, iv, std::max(probes, 64)),
                          l1_norm_derivative(d.regular, iv).value};
}

}  // namespace detail

/// Whole-line L-infinity constants via band decomposition: c1 at rate -mu/2
/// from the central bands, c2 at rate -1/2 from the closed-form series bound.
inline ConeConstantSet global_linfty_constants(const WeightedDatum& d, const SymbolDescriptor& s,
                                               int probes = 257) {
    const int start = detail::decomposition_start(s);
    const auto& env = *s.lower_envelope;
    if (!(d.alpha > d.mu + env.decay))
        throw std::invalid_argument("global_linfty_constants: series not summable (alpha <= mu + beta)");
    detail::require_band_decay_reach(d, start, "global_linfty_constants");

    const double n = static_cast<double>(start);
    auto curvature = [&s](double p) { return s.curvature(p); };
    auto central = [&](const Interval& iv, double gap1, double gap2) {
        const auto norms = detail::half_range_norms(d, iv, probes);
        const double m = 2.0 / certified_minimum(curvature, iv, probes) + 1.0 / gap1 + 1.0 / gap2;
        return (1.0 / (2.0 * kPi)) * (5.0 / d.mu) * norms.sup_u +
               (1.0 / (2.0 * kPi)) * (4.0 * norms.sup_u + norms.l1_du) * m;
    };
    const double c_plus =
        central(Interval{0.0, n}, slope_gap(s, n, n + 1.0), slope_gap(s, -1.0, 0.0));
    const double c_minus =
        central(Interval{-n, 0.0}, slope_gap(s, -n - 1.0, -n), slope_gap(s, 0.0, 1.0));

    const double mu = d.mu, alpha = d.alpha, beta = env.decay;
    const double M = d.envelope_scale, Mp = d.band_l1_scale;
    const double series =
        5.0 * (std::pow(2.0, alpha - mu + 1.0) * M / kPi) * (alpha + 1.0 - mu) / (alpha - mu) +
        3.0 * (std::pow(2.0, 1.0 - mu + 2.0 * beta) * (5.0 * std::pow(2.0, alpha) * M + Mp) /
               (kPi * env.scale)) *
            (alpha + 1.0 - mu - beta) / (alpha - mu - beta);

    ConeConstantSet out;
    out.id = ConeEstimateId::global_linfty;
    out.constants = {{"c1", c_plus + c_minus}, {"c2", series}};
    out.exponents = {{"c1", -mu / 2.0}, {"c2", -0.5}};
    out.cone = SpaceTimeCone{};  // valid for every velocity
    out.note = "band-decomposition path, t >= 1";
    return out;
}

/// Fast path when a global curvature floor is declared: single uniform
/// constant at rate -mu/2 via truncation and the position-uniform estimate.
inline ConeConstantSet global_linfty_uniform_constant(const LineSingularDatum& d,
                                                      const SymbolDescriptor& s) {
    if (!s.convexity_floor)
        throw std::invalid_argument("global_linfty_uniform_constant: symbol lacks a convexity floor");
    const double c = decay_constant_uniform(d.mu, d.sup_u, d.l1_du, *s.convexity_floor, d.mu == 1.0) /
                     (2.0 * kPi);
    ConeConstantSet out;
    out.id = ConeEstimateId::global_linfty;
    out.constants = {{"c_uniform", c}};
    out.exponents = {{"c_uniform", -d.mu / 2.0}};
    out.cone = SpaceTimeCone{};
    out.note = "uniform-convexity-floor path";
    return out;
}

inline LineSingularDatum as_line_singular(const WeightedDatum& d) {
    return LineSingularDatum{0.0, d.mu, d.regular, d.sup_u, d.l1_du, d.envelope_scale, d.alpha};
}

/// Dispatcher over the two global L-infinity paths; the report names the one
/// used.
inline ConeConstantSet global_linfty_bound(const WeightedDatum& d, const SymbolDescriptor& s,
                                           int probes = 257) {
    if (s.convexity_floor) return global_linfty_uniform_constant(as_line_singular(d), s);
    return global_linfty_constants(d, s, probes);
}

/// Concentration estimate outside the velocity-range cone (a, b): c1 at rate
/// -mu plus c2 at rate -1 on the complement of the cone.
inline ConeConstantSet concentration_constants(const WeightedDatum& d, const SymbolDescriptor& s,
                                               int probes = 257) {
    if (!s.lower_envelope || !s.upper_envelope)
        throw std::invalid_argument("concentration_constants: symbol needs both curvature envelopes");
    if (!s.asymptotic_velocities)
        throw std::invalid_argument("concentration_constants: symbol lacks asymptotic velocities");
    const auto& env = *s.lower_envelope;
    if (!(env.decay >= s.upper_envelope->decay) || !(s.upper_envelope->decay > 1.0))
        throw std::invalid_argument("concentration_constants: requires beta >= beta_plus > 1");
    if (!(d.alpha > d.mu + env.decay - 1.0))
        throw std::invalid_argument(
            "concentration_constants: series not summable (alpha <= mu + beta - 1)");
    const int start = detail::decomposition_start(s);
    detail::require_band_decay_reach(d, start, "concentration_constants");

    const auto [a, b] = *s.asymptotic_velocities;
    const double n = static_cast<double>(start);
    const double m_minus = std::min(s.slope(-n) - a, b - s.slope(0.0));
    const double m_plus = std::min(s.slope(0.0) - a, b - s.slope(n));
    if (!(m_minus > 0.0) || !(m_plus > 0.0))
        throw std::invalid_argument("concentration_constants: velocity gaps not positive");

    auto central = [&](const Interval& iv, double gap) {
        const auto norms = detail::half_range_norms(d, iv, probes);
        return (1.0 / (2.0 * kPi)) * (1.0 / d.mu) * norms.sup_u +
               (1.0 / (2.0 * kPi)) * (4.0 * norms.sup_u + norms.l1_du) / gap;
    };
    const double c1 = central(Interval{-n, 0.0}, m_minus) + central(Interval{0.0, n}, m_plus);

    const double mu = d.mu, alpha = d.alpha, beta = env.decay;
    const double M = d.envelope_scale, Mp = d.band_l1_scale;
    const double series = ((beta - 1.0) / (kPi * env.scale)) *
                          (3.0 * std::pow(2.0, -mu + alpha + beta) * M +
                           std::pow(2.0, -mu + beta) * (std::pow(2.0, alpha) * M + Mp)) *
                          (alpha + 2.0 - mu - beta) / (alpha + 1.0 - mu - beta);

    ConeConstantSet out;
    out.id = ConeEstimateId::concentration;
    out.constants = {{"c1", c1}, {"c2", series}};
    out.exponents = {{"c1", -mu}, {"c2", -1.0}};
    out.cone = SpaceTimeCone::bounded(a, b);
    out.note = "valid on the complement of the cone";
    return out;
}

/// Per-band constant of the decomposition series (rate -1/2 bands away from
/// the singularity), computed from the actual density norms on [n, n+1].
inline double band_series_term(const WeightedDatum& d, const SymbolDescriptor& s, long long n,
                               int probes = 65) {
    if (!(n >= 1 || n <= -2)) throw std::invalid_argument("band_series_term: n in {0,-1} excluded");
    const ComplexFunction density = detail::line_density_handle(0.0, d.mu, d.regular);
    const Interval iv{static_cast<double>(n), static_cast<double>(n + 1)};
    const double sup_U = sup_norm(density, iv, std::max(probes, 64));
    const double l1_U = l1_norm_derivative(density, iv, 1e-12).value;
    const double nd = static_cast<double>(n);
    const double m = 2.0 / certified_minimum([&s](double p) { return s.curvature(p); }, iv, probes) +
                     1.0 / slope_gap(s, nd + 1.0, nd + 2.0) + 1.0 / slope_gap(s, nd - 1.0, nd);
    return (5.0 / (2.0 * kPi)) * sup_U + (1.0 / (2.0 * kPi)) * (4.0 * sup_U + l1_U) * m;
}

/// Per-band constant of the off-cone series (rate -1 bands), from the actual
/// density norms and the velocity gap of the band.
inline double offcone_series_term(const WeightedDatum& d, const SymbolDescriptor& s, long long n,
                                  int probes = 65) {
    if (!(n >= 1 || n <= -2)) throw std::invalid_argument("offcone_series_term: n in {0,-1} excluded");
    if (!s.asymptotic_velocities)
        throw std::invalid_argument("offcone_series_term: symbol lacks asymptotic velocities");
    const auto [a, b] = *s.asymptotic_velocities;
    const ComplexFunction density = detail::line_density_handle(0.0, d.mu, d.regular);
    const Interval iv{static_cast<double>(n), static_cast<double>(n + 1)};
    const double sup_U = sup_norm(density, iv, std::max(probes, 64));
    const double l1_U = l1_norm_derivative(density, iv, 1e-12).value;
    const double nd = static_cast<double>(n);
    const double gap = std::min(s.slope(nd) - a, b - s.slope(nd + 1.0));
    if (!(gap > 0.0)) throw std::invalid_argument("offcone_series_term: velocity gap not positive");
    return (1.0 / (2.0 * kPi)) * (3.0 * sup_U + l1_U) / gap;
}

/// Sum of band_series_term over the decomposition bands with |n| <= n_max.
inline double band_series_partial_sum(const WeightedDatum& d, const SymbolDescriptor& s,
                                      long long n_max, int probes = 65) {
    const int start = detail::decomposition_start(s);
    double sum = 0.0;
    for (long long n = start; n <= n_max; ++n) sum += band_series_term(d, s, n, probes);
    for (long long n = -start - 1; n >= -n_max; --n) sum += band_series_term(d, s, n, probes);
    return sum;
}

inline double offcone_series_partial_sum(const WeightedDatum& d, const SymbolDescriptor& s,
                                         long long n_max, int probes = 65) {
    const int start = detail::decomposition_start(s);
    double sum = 0.0;
    for (long long n = start; n <= n_max; ++n) sum += offcone_series_term(d, s, n, probes);
    for (long long n = -start - 1; n >= -n_max; --n) sum += offcone_series_term(d, s, n, probes);
    return sum;
}

struct RaySample {
    double velocity = 0.0;
    double magnitude = 0.0;
    double error = 0.0;  // quadrature error estimate plus truncation tail
    bool converged = true;
};

struct ConeSupremum {
    double sup = 0.0;
    int flagged = 0;
    std::vector<RaySample> samples;
};

/// n_rays velocities, half equispaced and half Chebyshev, inside [lo, hi].
inline std::vector<double> ray_velocities(double lo, double hi, int n_rays) {
    if (!(hi > lo)) throw std::invalid_argument("ray_velocities: empty velocity window");
    if (n_rays < 1) throw std::invalid_argument("ray_velocities: need at least one ray");
    const int n_uniform = n_rays / 2 + (n_rays % 2);
    const int n_cheb = n_rays - n_uniform;
    std::vector<double> v;
    v.reserve(static_cast<size_t>(n_rays));
    for (int k = 0; k < n_uniform; ++k)
        v.push_back(n_uniform == 1 ? 0.5 * (lo + hi)
                                   : lo + (hi - lo) * static_cast<double>(k) / (n_uniform - 1));
    for (int k = 0; k < n_cheb; ++k)
        v.push_back(0.5 * (lo + hi) +
                    0.5 * (hi - lo) * std::cos(kPi * (2.0 * k + 1.0) / (2.0 * n_cheb)));
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

inline std::vector<RaySample> sample_rays(const InitialDatum& d, const SymbolDescriptor& s, double t,
                                          const std::vector<double>& velocities,
                                          std::optional<double> tol = std::nullopt) {
    std::vector<RaySample> out;
    out.reserve(velocities.size());
    for (double v : velocities) {
        const QuadratureResult q = solution_value(d, s, t, v * t, tol);
        out.push_back(RaySample{v, std::abs(q.value),
                                q.abs_error_estimate + q.truncation_tail_bound, q.converged});
    }
    return out;
}

/// Empirical sup of |u(t, v t)| over rays in the cone's velocity interval.
/// Infinite cone bounds must be clipped by a declared finite window.
inline ConeSupremum sup_over_cone(const InitialDatum& d, const SymbolDescriptor& s, double t,
                                  const SpaceTimeCone& cone, int n_rays,
                                  std::optional<Interval> clip = std::nullopt,
                                  std::optional<double> tol = std::nullopt) {
    if (!(t > 0.0)) throw std::invalid_argument("sup_over_cone: t must be positive");
    if (n_rays < 16) throw std::invalid_argument("sup_over_cone: need at least 16 rays");
    double lo = cone.lo ? *cone.lo : -std::numeric_limits<double>::infinity();
    double hi = cone.hi ? *cone.hi : std::numeric_limits<double>::infinity();
    if (clip) {
        lo = std::max(lo, clip->lo);
        hi = std::min(hi, clip->hi);
    }
    if (!std::isfinite(lo) || !std::isfinite(hi))
        throw std::invalid_argument("sup_over_cone: infinite cone requires a clip window");

    ConeSupremum out;
    out.samples = sample_rays(d, s, t, ray_velocities(lo, hi, n_rays), tol);
    for (const auto& sample : out.samples) {
        out.sup = std::max(out.sup, sample.magnitude);
        if (!sample.converged) ++out.flagged;
    }
    return out;
}

/// Empirical check of the optimal slow rate: samples |u| along the critical
/// direction x = f'(p1) t of the singular frequency and fits the decay
/// exponent. Requires the parabolic catalog symbol and a regular part
/// vanishing at the right band edge.
inline DecayFit optimality_probe(const BandDatum& d, const SymbolDescriptor& s,
                                 const std::vector<double>& t_grid,
                                 std::optional<double> tol = std::nullopt) {
    if (t_grid.size() < 8) throw std::invalid_argument("optimality_probe: need at least 8 grid points");
    for (double p : {-1.0, 0.0, 0.7, 2.0})
        if (std::abs(s.curvature(p) - 2.0) > 1e-9)
            throw std::invalid_argument("optimality_probe: symbol must be the parabolic catalog symbol");
    const auto& a = d.amplitude;
    const double sup_u = sup_norm(a.regular_part, a.band());
    if (std::abs(a.regular_part.value(a.p2)) > 1e-12 * (1.0 + sup_u))
        throw std::invalid_argument("optimality_probe: regular part must vanish at the right edge");

    const double direction = 2.0 * a.p1;
    std::vector<std::pair<double, double>> samples;
    samples.reserve(t_grid.size());
    for (double t : t_grid) {
        const QuadratureResult q = solution_value(d, s, t, direction * t, tol);
        samples.emplace_back(t, std::abs(q.value));
    }
    return fit_decay(samples);
}

/// Discrete L2 norm of u(t, .) over the uniform grid x_lo, x_lo + step, ...
inline double discrete_l2_norm(const InitialDatum& d, const SymbolDescriptor& s, double t,
                               double x_lo, double x_hi, double step,
                               std::optional<double> tol = std::nullopt) {
    if (!(step > 0.0) || !(x_hi > x_lo)) throw std::invalid_argument("discrete_l2_norm: bad grid");
    double sum = 0.0;
    for (double x = x_lo; x <= x_hi + 0.5 * step; x += step) {
        const QuadratureResult q = solution_value(d, s, t, x, tol);
        sum += std::norm(q.value) * step;
    }
    return std::sqrt(sum);
}

}  // namespace corput
