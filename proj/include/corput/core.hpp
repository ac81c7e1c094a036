#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace corput {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Closed interval [lo, hi] on the real line. Domains of function handles are
/// treated as open; probe grids stay strictly inside when that matters.
struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();

    double width() const { return hi - lo; }
    double midpoint() const { return 0.5 * (lo + hi); }
    bool contains(double x) const { return lo <= x && x <= hi; }
    bool contains(const Interval& other) const { return lo <= other.lo && other.hi <= hi; }
    bool is_finite() const { return std::isfinite(lo) && std::isfinite(hi); }

    static Interval whole_line() { return Interval{}; }
};

inline Interval hull(const Interval& a, double x) {
    return Interval{std::min(a.lo, x), std::max(a.hi, x)};
}

/// Scalar function with analytic derivatives supplied by the constructor.
/// `second_derivative` may be left empty when the consumer does not need it
/// (amplitudes); phases and symbols must provide it.
template <class Scalar>
struct FunctionHandle {
    std::function<Scalar(double)> value;
    std::function<Scalar(double)> derivative;
    std::function<Scalar(double)> second_derivative;
    Interval domain = Interval::whole_line();

    bool has_derivative() const { return static_cast<bool>(derivative); }
    bool has_second_derivative() const { return static_cast<bool>(second_derivative); }
};

using RealFunction = FunctionHandle<double>;
using ComplexFunction = FunctionHandle<Complex>;

inline RealFunction constant_function(double c) {
    return RealFunction{
        [c](double) { return c; },
        [](double) { return 0.0; },
        [](double) { return 0.0; },
        Interval::whole_line()};
}

inline ComplexFunction constant_complex_function(Complex c) {
    return ComplexFunction{
        [c](double) { return c; },
        [](double) { return Complex{0.0, 0.0}; },
        [](double) { return Complex{0.0, 0.0}; },
        Interval::whole_line()};
}

/// Amplitude U(p) = (p - p1)^(mu-1) * regular_part(p) on the band [p1, p2],
/// singular at the left endpoint when mu < 1.
struct SingularAmplitude {
    double p1 = 0.0;
    double p2 = 1.0;
    double mu = 1.0;
    ComplexFunction regular_part;

    Interval band() const { return Interval{p1, p2}; }
};

/// Phase with the first derivative factored as
///   psi'(p) = |p - p0|^(rho-1) * nondegenerate_part(p),
/// p0 the stationary point, rho > 1 its order parameter.
struct PhaseDescriptor {
    RealFunction psi;
    double p0 = 0.0;
    double rho = 2.0;
    RealFunction nondegenerate_part;
};

/// f''(p) >= scale * |p|^-decay for |p| >= radius.
struct ConvexityLowerEnvelope {
    double radius = 1.0;
    double scale = 1.0;
    double decay = 1.0;
};

/// f''(p) <= scale * |p|^-decay for |p| >= the lower envelope's radius.
struct ConvexityUpperEnvelope {
    double scale = 1.0;
    double decay = 1.0;
};

/// Dispersion symbol f with f'' > 0, plus optional growth/decay metadata.
struct SymbolDescriptor {
    RealFunction f;
    std::optional<double> convexity_floor;
    std::optional<ConvexityLowerEnvelope> lower_envelope;
    std::optional<ConvexityUpperEnvelope> upper_envelope;
    std::optional<std::pair<double, double>> asymptotic_velocities;

    double slope(double p) const { return f.derivative(p); }
    double curvature(double p) const { return f.second_derivative(p); }
};

/// Space-time cone {(t, x) : t > 0, a <= x/t <= b}. Infinite bounds are
/// represented by absent optionals, never by sentinel values fed to formulas.
struct SpaceTimeCone {
    std::optional<double> lo;
    std::optional<double> hi;

    static SpaceTimeCone bounded(double a, double b) {
        if (!(a < b)) throw std::invalid_argument("SpaceTimeCone: requires a < b");
        return SpaceTimeCone{a, b};
    }
    static SpaceTimeCone half_below(double b) { return SpaceTimeCone{std::nullopt, b}; }
    static SpaceTimeCone half_above(double a) { return SpaceTimeCone{a, std::nullopt}; }

    bool contains_velocity(double v) const {
        if (lo && v < *lo) return false;
        if (hi && v > *hi) return false;
        return true;
    }
    bool contains(double t, double x) const { return t > 0.0 && contains_velocity(x / t); }
    bool complement_contains(double t, double x) const { return t > 0.0 && !contains_velocity(x / t); }
};

/// Uniform-plus-Chebyshev probe grid on [a, b]; roughly `count` points total.
inline std::vector<double> probe_points(const Interval& iv, int count) {
    if (count < 2) throw std::invalid_argument("probe_points: count must be >= 2");
    if (!iv.is_finite() || !(iv.lo < iv.hi))
        throw std::invalid_argument("probe_points: interval must be finite and nonempty");
    const int n_uniform = count / 2 + 1;
    const int n_cheb = count - n_uniform;
    std::vector<double> pts;
    pts.reserve(static_cast<size_t>(count) + 1);
    for (int k = 0; k < n_uniform; ++k)
        pts.push_back(iv.lo + iv.width() * static_cast<double>(k) / (n_uniform - 1));
    const double mid = iv.midpoint();
    const double half = 0.5 * iv.width();
    for (int k = 0; k < n_cheb; ++k)
        pts.push_back(mid + half * std::cos(kPi * (2.0 * k + 1.0) / (2.0 * n_cheb)));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

/// Strictly increasing geometric grid with `points` entries on [lo, hi].
inline std::vector<double> geometric_grid(double lo, double hi, int points) {
    if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("geometric_grid: requires 0 < lo < hi");
    if (points < 2) throw std::invalid_argument("geometric_grid: requires points >= 2");
    std::vector<double> grid(static_cast<size_t>(points));
    const double ratio = std::log(hi / lo) / (points - 1);
    for (int k = 0; k < points; ++k) grid[static_cast<size_t>(k)] = lo * std::exp(ratio * k);
    grid.front() = lo;
    grid.back() = hi;
    return grid;
}

inline std::vector<double> linear_grid(double lo, double hi, int points) {
    if (points < 1) throw std::invalid_argument("linear_grid: requires points >= 1");
    if (points == 1) return {0.5 * (lo + hi)};
    std::vector<double> grid(static_cast<size_t>(points));
    for (int k = 0; k < points; ++k)
        grid[static_cast<size_t>(k)] = lo + (hi - lo) * static_cast<double>(k) / (points - 1);
    return grid;
}

}  // namespace corput
