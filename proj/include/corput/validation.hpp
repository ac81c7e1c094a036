#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "corput/core.hpp"
#include "corput/extrema.hpp"

namespace corput {

struct Violation {
    std::string what;
    double where = 0.0;
    double magnitude = 0.0;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }

    std::string summary() const {
        if (ok()) return "ok";
        std::ostringstream os;
        for (const auto& v : violations)
            os << v.what << " at p=" << v.where << " (magnitude " << v.magnitude << ")\n";
        return os.str();
    }
};

namespace detail {

// Central-difference consistency between a declared derivative and the value
// it claims to differentiate. Catalog handles are analytic, so a loose
// relative tolerance suffices; failures indicate declaration errors.
template <class Scalar>
void check_derivative_consistency(ValidationReport& report, const std::string& label,
                                  const std::function<Scalar(double)>& value,
                                  const std::function<Scalar(double)>& deriv,
                                  const std::vector<double>& pts) {
    if (!value || !deriv || pts.size() < 3) return;
    const double span = pts.back() - pts.front();
    const double h = std::max(1e-6 * span, 1e-9);
    double scale = 1.0;
    for (size_t k = 1; k + 1 < pts.size(); k += std::max<size_t>(1, pts.size() / 24)) {
        scale = std::max(scale, std::abs(deriv(pts[k])));
    }
    for (size_t k = 1; k + 1 < pts.size(); k += std::max<size_t>(1, pts.size() / 24)) {
        const double p = pts[k];
        const Scalar fd = (value(p + h) - value(p - h)) / (2.0 * h);
        const double resid = std::abs(fd - deriv(p));
        if (resid > 1e-4 * scale + 1e-7)
            report.violations.push_back({label + ": derivative mismatch vs finite differences", p, resid});
    }
}

inline void check_finite(ValidationReport& report, const std::string& label, double v, double p) {
    if (!std::isfinite(v)) report.violations.push_back({label + ": non-finite evaluation", p, v});
}

inline void check_finite(ValidationReport& report, const std::string& label, Complex v, double p) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        report.violations.push_back({label + ": non-finite evaluation", p, std::abs(v)});
}

}  // namespace detail

/// Probes the amplitude's assumptions on its band: finite regular part and
/// derivative, nonvanishing regular part at the singular endpoint when mu != 1.
inline ValidationReport validate_amplitude(const SingularAmplitude& a, int probes = 257) {
    if (probes < 16) throw std::invalid_argument("validate_amplitude: probes must be >= 16");
    ValidationReport report;
    if (!(a.p1 < a.p2)) {
        report.violations.push_back({"band ordering violated (p1 >= p2)", a.p1, a.p2 - a.p1});
        return report;
    }
    if (!(a.mu > 0.0) || !(a.mu <= 1.0))
        report.violations.push_back({"mu outside (0,1]", a.p1, a.mu});
    if (!a.regular_part.value) {
        report.violations.push_back({"regular part has no value map", a.p1, 0.0});
        return report;
    }

    const auto pts = probe_points(a.band(), probes);
    for (double p : pts) {
        detail::check_finite(report, "regular part", a.regular_part.value(p), p);
        if (a.regular_part.has_derivative() && p > a.p1 && p < a.p2)
            detail::check_finite(report, "regular part derivative", a.regular_part.derivative(p), p);
    }
    if (a.mu != 1.0 && std::abs(a.regular_part.value(a.p1)) <= 0.0)
        report.violations.push_back({"regular part vanishes at the singularity with mu != 1", a.p1, 0.0});
    if (a.regular_part.has_derivative())
        detail::check_derivative_consistency<Complex>(report, "regular part", a.regular_part.value,
                                                      a.regular_part.derivative, pts);
    return report;
}

/// Checks the declared factorization of psi' on the band, the nonvanishing of
/// the nondegenerate part there, and one-sided monotonicity of psi' (via sign
/// constancy of psi'' on each side of p0, probed on the hull of band and p0
/// padded by one band width and clipped to the declared domain).
inline ValidationReport validate_phase(const PhaseDescriptor& ph, const Interval& band,
                                       int probes = 257) {
    if (probes < 16) throw std::invalid_argument("validate_phase: probes must be >= 16");
    ValidationReport report;
    if (!ph.psi.value || !ph.psi.has_derivative()) {
        report.violations.push_back({"phase lacks value or derivative map", band.lo, 0.0});
        return report;
    }
    if (!ph.psi.domain.contains(band)) {
        report.violations.push_back({"band not contained in the declared domain", band.lo, 0.0});
        return report;
    }
    if (!(ph.rho > 1.0)) report.violations.push_back({"rho must exceed 1", ph.p0, ph.rho});

    const auto pts = probe_points(band, probes);
    constexpr double kFactorTol = 1e-8;
    for (double p : pts) {
        const double dpsi = ph.psi.derivative(p);
        detail::check_finite(report, "psi'", dpsi, p);
        const double factored = std::pow(std::abs(p - ph.p0), ph.rho - 1.0) * ph.nondegenerate_part.value(p);
        const double resid = std::abs(dpsi - factored);
        if (!(resid <= kFactorTol * (1.0 + std::abs(dpsi))))
            report.violations.push_back({"factorization mismatch", p, resid});
    }

    auto abs_nondegenerate = [&ph](double p) { return std::abs(ph.nondegenerate_part.value(p)); };
    const ExtremumResult min_nd = refined_minimum(abs_nondegenerate, band, probes);
    if (!(min_nd.value > 0.0))
        report.violations.push_back({"nondegenerate part vanishes on the band", min_nd.location, min_nd.value});

    if (ph.psi.has_second_derivative()) {
        const double pad = std::max(band.width(), 1e-3);
        Interval window = hull(band, ph.p0);
        window.lo = std::max(window.lo - pad, ph.psi.domain.lo);
        window.hi = std::min(window.hi + pad, ph.psi.domain.hi);
        double scale = 0.0;
        const auto wpts = probe_points(window, probes);
        for (double p : wpts) scale = std::max(scale, std::abs(ph.psi.second_derivative(p)));
        const double tol = 1e-12 * std::max(1.0, scale);
        for (int side = 0; side < 2; ++side) {
            bool pos = false, neg = false;
            double where = ph.p0;
            for (double p : wpts) {
                if (side == 0 && p > ph.p0) continue;
                if (side == 1 && p < ph.p0) continue;
                const double c = ph.psi.second_derivative(p);
                if (c > tol) pos = true;
                if (c < -tol) neg = true;
                if (pos && neg) {
                    where = p;
                    break;
                }
            }
            if (pos && neg)
                report.violations.push_back({"monotonicity violation of psi' on one side of p0", where, 0.0});
        }
        detail::check_derivative_consistency<double>(report, "psi", ph.psi.value, ph.psi.derivative, pts);
        detail::check_derivative_consistency<double>(report, "psi'", ph.psi.derivative,
                                                     ph.psi.second_derivative, pts);
    }
    return report;
}

/// Probes f'' > 0 and the declared envelopes. Envelopes are sampled on
/// [radius, envelope_reach] on both sides; catalog instances use reach 50.
inline ValidationReport validate_symbol(const SymbolDescriptor& s, const Interval& core_range,
                                        int probes = 257, double envelope_reach = 50.0) {
    if (probes < 16) throw std::invalid_argument("validate_symbol: probes must be >= 16");
    ValidationReport report;
    if (!s.f.value || !s.f.has_derivative() || !s.f.has_second_derivative()) {
        report.violations.push_back({"symbol lacks value/derivative/second-derivative map", 0.0, 0.0});
        return report;
    }
    for (double p : probe_points(core_range, probes)) {
        const double c = s.f.second_derivative(p);
        detail::check_finite(report, "f''", c, p);
        if (!(c > 0.0)) report.violations.push_back({"f'' not strictly positive", p, c});
        if (s.convexity_floor && c < *s.convexity_floor * (1.0 - 1e-12))
            report.violations.push_back({"convexity floor violated", p, c});
    }
    if (s.lower_envelope) {
        const auto& env = *s.lower_envelope;
        for (int side = -1; side <= 1; side += 2)
            for (double q : probe_points(Interval{env.radius, envelope_reach}, probes)) {
                const double p = side * q;
                const double c = s.f.second_derivative(p);
                const double floor = env.scale * std::pow(std::abs(p), -env.decay);
                if (c < floor * (1.0 - 1e-12))
                    report.violations.push_back({"lower curvature envelope violated", p, c - floor});
            }
    }
    if (s.upper_envelope) {
        if (!s.lower_envelope) {
            report.violations.push_back({"upper envelope declared without lower envelope radius", 0.0, 0.0});
        } else {
            const auto& env = *s.upper_envelope;
            if (!(s.lower_envelope->decay >= env.decay) || !(env.decay > 1.0))
                report.violations.push_back({"envelope decays must satisfy beta >= beta_plus > 1",
                                             0.0, env.decay});
            if (!s.asymptotic_velocities)
                report.violations.push_back({"both envelopes present but asymptotic velocities missing", 0.0, 0.0});
            else if (!std::isfinite(s.asymptotic_velocities->first) ||
                     !std::isfinite(s.asymptotic_velocities->second))
                report.violations.push_back({"asymptotic velocities must be finite", 0.0, 0.0});
            for (int side = -1; side <= 1; side += 2)
                for (double q : probe_points(Interval{s.lower_envelope->radius, envelope_reach}, probes)) {
                    const double p = side * q;
                    const double c = s.f.second_derivative(p);
                    const double cap = env.scale * std::pow(std::abs(p), -env.decay);
                    if (c > cap * (1.0 + 1e-12))
                        report.violations.push_back({"upper curvature envelope violated", p, c - cap});
                }
        }
    }
    return report;
}

}  // namespace corput
