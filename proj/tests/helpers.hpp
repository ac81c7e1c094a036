#pragma once

#include <cmath>
#include <complex>

#include "corput/core.hpp"

namespace corput::test {

inline SingularAmplitude make_amplitude(double mu, double p1, double p2,
                                        std::function<Complex(double)> value,
                                        std::function<Complex(double)> derivative) {
    SingularAmplitude a;
    a.p1 = p1;
    a.p2 = p2;
    a.mu = mu;
    a.regular_part.value = std::move(value);
    a.regular_part.derivative = std::move(derivative);
    return a;
}

inline SingularAmplitude unit_amplitude(double mu, double p1 = 0.0, double p2 = 1.0) {
    return make_amplitude(mu, p1, p2, [](double) { return Complex{1.0, 0.0}; },
                          [](double) { return Complex{0.0, 0.0}; });
}

inline SingularAmplitude zero_amplitude(double mu = 1.0) {
    return make_amplitude(mu, 0.0, 1.0, [](double) { return Complex{0.0, 0.0}; },
                          [](double) { return Complex{0.0, 0.0}; });
}

/// psi(p) = 2 p0 p - p^2 with the sign-aware nondegenerate part.
inline PhaseDescriptor quadratic_phase(double p0) {
    PhaseDescriptor ph;
    ph.p0 = p0;
    ph.rho = 2.0;
    ph.psi.value = [p0](double p) { return 2.0 * p0 * p - p * p; };
    ph.psi.derivative = [p0](double p) { return 2.0 * (p0 - p); };
    ph.psi.second_derivative = [](double) { return -2.0; };
    ph.nondegenerate_part.value = [p0](double p) {
        return p == p0 ? -2.0 : -2.0 * (p >= p0 ? 1.0 : -1.0);
    };
    return ph;
}

/// psi(p) = p declared with an exterior pseudo stationary point at -7, so the
/// factorization |p + 7| * (1 / |p + 7|) = 1 holds exactly on bands right of -7.
inline PhaseDescriptor linear_phase() {
    PhaseDescriptor ph;
    ph.p0 = -7.0;
    ph.rho = 2.0;
    ph.psi.value = [](double p) { return p; };
    ph.psi.derivative = [](double) { return 1.0; };
    ph.psi.second_derivative = [](double) { return 0.0; };
    ph.psi.domain = Interval{-6.5, 1e6};
    ph.nondegenerate_part.value = [](double p) { return 1.0 / std::abs(p + 7.0); };
    ph.nondegenerate_part.domain = Interval{-6.5, 1e6};
    return ph;
}

/// Fresnel special functions C, S (half-pi normalization) by power series;
/// accurate near the origin and independent of the quadrature engine.
inline std::pair<double, double> fresnel(double x) {
    const double half_pi = 1.5707963267948966;
    double c_sum = 0.0, s_sum = 0.0;
    double factorial = 1.0;  // (2n)! running value for c, (2n+1)! for s
    for (int n = 0; n < 24; ++n) {
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        const double fact_2n = factorial;            // (2n)!
        const double fact_2n1 = factorial * (2.0 * n + 1.0);  // (2n+1)!
        c_sum += sign * std::pow(half_pi, 2.0 * n) * std::pow(x, 4.0 * n + 1.0) /
                 (fact_2n * (4.0 * n + 1.0));
        s_sum += sign * std::pow(half_pi, 2.0 * n + 1.0) * std::pow(x, 4.0 * n + 3.0) /
                 (fact_2n1 * (4.0 * n + 3.0));
        factorial *= (2.0 * n + 1.0) * (2.0 * n + 2.0);
    }
    return {c_sum, s_sum};
}

}  // namespace corput::test
