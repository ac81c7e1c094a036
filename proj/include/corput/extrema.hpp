#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

#include "corput/core.hpp"

namespace corput {

namespace detail {

inline constexpr double kGoldenRatio = 0.6180339887498949;

/// Golden-section minimum of f on [a, b]; assumes a local bracket.
inline double golden_section_min(const std::function<double(double)>& f, double a, double b,
                                 int iterations = 80) {
    double x1 = b - kGoldenRatio * (b - a);
    double x2 = a + kGoldenRatio * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int i = 0; i < iterations && (b - a) > 0.0; ++i) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kGoldenRatio * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kGoldenRatio * (b - a);
            f2 = f(x2);
        }
    }
    return std::min(f1, f2);
}

}  // namespace detail

struct ExtremumResult {
    double value = 0.0;
    double location = 0.0;
};

/// Grid scan plus golden-section refinement around the grid minimum.
inline ExtremumResult refined_minimum(const std::function<double(double)>& f, const Interval& iv,
                                      int probes = 257) {
    const auto pts = probe_points(iv, probes);
    size_t best = 0;
    double best_val = f(pts[0]);
    if (!std::isfinite(best_val))
        throw std::runtime_error("refined_minimum: non-finite sample at p=" + std::to_string(pts[0]));
    for (size_t k = 1; k < pts.size(); ++k) {
        const double v = f(pts[k]);
        if (!std::isfinite(v))
            throw std::runtime_error("refined_minimum: non-finite sample at p=" + std::to_string(pts[k]));
        if (v < best_val) {
            best_val = v;
            best = k;
        }
    }
    const double lo = best > 0 ? pts[best - 1] : pts[best];
    const double hi = best + 1 < pts.size() ? pts[best + 1] : pts[best];
    double refined = best_val;
    if (hi > lo) refined = std::min(best_val, detail::golden_section_min(f, lo, hi));
    return ExtremumResult{refined, pts[best]};
}

/// Grid scan plus refinement; never below the grid maximum.
inline ExtremumResult refined_maximum(const std::function<double(double)>& f, const Interval& iv,
                                      int probes = 257) {
    auto negated = [&f](double x) { return -f(x); };
    const ExtremumResult r = refined_minimum(negated, iv, probes);
    return ExtremumResult{-r.value, r.location};
}

/// Refined minimum shifted down by a 1e-12 relative safety margin. Constants
/// divide by this quantity, so shading it low only loosens the certified
/// bound; the margin scales with the value so tiny minima stay positive.
inline double certified_minimum(const std::function<double(double)>& f, const Interval& iv,
                                int probes = 257) {
    const ExtremumResult r = refined_minimum(f, iv, probes);
    return r.value - 1e-12 * std::abs(r.value);
}

}  // namespace corput
