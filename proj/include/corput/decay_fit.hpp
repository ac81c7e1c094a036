#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace corput {

struct DecayFit {
    double slope = 0.0;
    double intercept = 0.0;
    double stderr_slope = 0.0;
    std::pair<double, double> window{0.0, 0.0};
    int samples_used = 0;
};

/// Window discarding the lowest decade of the grid (pre-asymptotic transient).
inline std::pair<double, double> default_fit_window(const std::vector<std::pair<double, double>>& samples) {
    if (samples.empty()) throw std::invalid_argument("default_fit_window: no samples");
    double lo = samples.front().first, hi = samples.front().first;
    for (const auto& s : samples) {
        lo = std::min(lo, s.first);
        hi = std::max(hi, s.first);
    }
    return {std::min(lo * 10.0, hi), hi};
}

/// Least-squares slope of log(magnitude) vs log(grid value). Each magnitude is
/// first replaced by the max over a sliding window of 3 neighbors, which
/// suppresses oscillation zeros; nonpositive magnitudes are then dropped.
inline DecayFit fit_decay(const std::vector<std::pair<double, double>>& samples,
                          std::pair<double, double> window) {
    if (!(window.first < window.second))
        throw std::invalid_argument("fit_decay: window must be ordered");
    auto sorted = samples;
    std::sort(sorted.begin(), sorted.end());

    // Keep only grid points with a full 3-sample window; a partial window at
    // the ends would bend exact power-law data.
    std::vector<std::pair<double, double>> smoothed;
    smoothed.reserve(sorted.size());
    for (size_t k = 1; k + 1 < sorted.size(); ++k) {
        const double m =
            std::max({sorted[k - 1].second, sorted[k].second, sorted[k + 1].second});
        smoothed.emplace_back(sorted[k].first, m);
    }

    std::vector<double> xs, ys;
    for (const auto& [g, m] : smoothed) {
        if (g < window.first || g > window.second) continue;
        if (!(m > 0.0) || !(g > 0.0)) continue;
        xs.push_back(std::log(g));
        ys.push_back(std::log(m));
    }
    const int n = static_cast<int>(xs.size());
    if (n < 8) throw std::invalid_argument("fit_decay: fewer than 8 usable samples in window");

    double x_mean = 0.0, y_mean = 0.0;
    for (int k = 0; k < n; ++k) {
        x_mean += xs[static_cast<size_t>(k)];
        y_mean += ys[static_cast<size_t>(k)];
    }
    x_mean /= n;
    y_mean /= n;
    double sxx = 0.0, sxy = 0.0;
    for (int k = 0; k < n; ++k) {
        const double dx = xs[static_cast<size_t>(k)] - x_mean;
        sxx += dx * dx;
        sxy += dx * (ys[static_cast<size_t>(k)] - y_mean);
    }
    if (!(sxx > 0.0)) throw std::invalid_argument("fit_decay: degenerate grid (all equal)");

    DecayFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = y_mean - fit.slope * x_mean;
    double ssr = 0.0;
    for (int k = 0; k < n; ++k) {
        const double r = ys[static_cast<size_t>(k)] - (fit.intercept + fit.slope * xs[static_cast<size_t>(k)]);
        ssr += r * r;
    }
    fit.stderr_slope = n > 2 ? std::sqrt(ssr / (n - 2) / sxx) : 0.0;
    fit.window = window;
    fit.samples_used = n;
    return fit;
}

inline DecayFit fit_decay(const std::vector<std::pair<double, double>>& samples) {
    return fit_decay(samples, default_fit_window(samples));
}

}  // namespace corput
