#include <cmath>
#include <complex>

#include <doctest.h>

#include "corput/catalog.hpp"
#include "corput/quadrature.hpp"
#include "helpers.hpp"

using namespace corput;

namespace {

/// Unsubstituted adaptive path, used as the cross-check for mu = 1 cases.
Complex plain_oscillatory(const SingularAmplitude& a, const PhaseDescriptor& ph, double omega,
                          double tol) {
    auto integrand = [&](double p) -> Complex {
        return std::pow(p - a.p1, a.mu - 1.0) * a.regular_part.value(p) *
               std::exp(Complex(0.0, omega * ph.psi.value(p)));
    };
    const int seed = detail::oscillation_seed(omega, detail::phase_total_variation(ph, a.band()));
    return detail::adaptive_integrate(integrand, a.p1, a.p2, tol, kPanelEvalBudget, seed).value;
}

}  // namespace

TEST_CASE("closed form: flat amplitude with linear phase") {
    const auto a = test::unit_amplitude(1.0);
    const auto ph = test::linear_phase();
    for (double omega : {1.0, 10.0, 100.0, 1000.0, 10000.0}) {
        const auto q = oscillatory_integral(a, ph, omega, 1e-10);
        const Complex expected = (std::exp(Complex(0.0, omega)) - 1.0) / Complex(0.0, omega);
        CHECK(q.converged);
        CHECK(std::abs(q.value - expected) <= 1e-10 + q.abs_error_estimate);
        CHECK(std::abs(q.value) ==
              doctest::Approx(2.0 * std::abs(std::sin(0.5 * omega)) / omega).epsilon(1e-8));
    }
    const auto q10 = oscillatory_integral(a, ph, 10.0, 1e-12);
    CHECK(std::abs(q10.value) == doctest::Approx(0.1917849).epsilon(1e-6));
}

TEST_CASE("zero amplitude integrates to zero with zero error") {
    const auto q = oscillatory_integral(test::zero_amplitude(), test::linear_phase(), 10.0);
    CHECK(q.value == Complex{0.0, 0.0});
    CHECK(q.abs_error_estimate == 0.0);
    CHECK(q.converged);
}

TEST_CASE("square-root singularity against the Fresnel oracle") {
    const auto a = test::unit_amplitude(0.5);
    const auto ph = test::linear_phase();
    const auto q = oscillatory_integral(a, ph, 0.5 * kPi, 1e-12);
    const auto [c1, s1] = test::fresnel(1.0);
    const Complex expected{2.0 * c1, 2.0 * s1};
    CHECK(std::abs(q.value - expected) < 1e-10);
    CHECK(q.value.real() == doctest::Approx(1.5597868).epsilon(1e-6));
    CHECK(q.value.imag() == doctest::Approx(0.8765183).epsilon(1e-6));
}

TEST_CASE("preconditions and budget exhaustion") {
    const auto a = test::unit_amplitude(0.5);
    const auto ph = test::linear_phase();
    CHECK_THROWS_AS(oscillatory_integral(a, ph, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(oscillatory_integral(a, ph, -3.0), std::invalid_argument);
    CHECK_THROWS_AS(oscillatory_integral(a, ph, 1.0, 0.0), std::invalid_argument);

    const auto starved = oscillatory_integral(a, ph, 10000.0, 1e-15, 2000);
    CHECK_FALSE(starved.converged);
    CHECK(starved.abs_error_estimate > 0.0);
}

TEST_CASE("self-convergence: halving tol moves the value at most by the error sum") {
    const auto families = std::vector<std::pair<SingularAmplitude, PhaseDescriptor>>{
        {test::unit_amplitude(1.0), test::quadratic_phase(0.0)},
        {test::unit_amplitude(0.5), test::quadratic_phase(0.5)},
        {test::unit_amplitude(0.75), test::quadratic_phase(0.5)},
        {instantiate_amplitude("power_band_amplitude", {{"mu", 0.5}}),
         instantiate_phase("power_phase", {{"alpha", 1.5}})},
        {test::unit_amplitude(1.0), instantiate_phase("cubic_phase", {{"p0", 0.5}})}};
    for (const auto& [a, ph] : families) {
        for (double omega : {3.0, 47.0, 512.0}) {
            const auto coarse = oscillatory_integral(a, ph, omega, 1e-8);
            const auto fine = oscillatory_integral(a, ph, omega, 5e-9);
            CHECK(std::abs(coarse.value - fine.value) <=
                  coarse.abs_error_estimate + fine.abs_error_estimate + 1e-15);
        }
    }
}

TEST_CASE("substituted path agrees with the plain path for regular amplitudes") {
    const auto cases = std::vector<std::pair<SingularAmplitude, PhaseDescriptor>>{
        {test::unit_amplitude(1.0), test::quadratic_phase(0.3)},
        {test::unit_amplitude(1.0), instantiate_phase("cubic_phase", {{"p0", 0.5}})},
        {test::unit_amplitude(1.0), instantiate_phase("power_phase", {{"alpha", 1.5}})}};
    for (const auto& [a, ph] : cases) {
        for (double omega : {1.0, 20.0, 300.0}) {
            const auto sub = oscillatory_integral(a, ph, omega, 1e-10);
            const Complex plain = plain_oscillatory(a, ph, omega, 1e-10);
            CHECK(std::abs(sub.value - plain) <= 2e-10);
        }
    }
}

TEST_CASE("line integral: truncation radius solves the tail inequality") {
    LineDensity d;
    d.mu = 0.5;
    d.tail_scale = 1.0;
    d.tail_decay = 4.0;
    d.regular = constant_complex_function({1.0, 0.0});
    const double tol = 1e-6;
    const double radius = line_truncation_radius(d, tol);
    CHECK(radius == doctest::Approx(63.15).epsilon(0.01));
    CHECK(line_tail_bound(d, radius) <= 0.5 * tol);

    LineDensity shallow = d;
    shallow.tail_decay = 1.6;  // alpha - mu < 2: the secondary branch binds
    const double r2 = line_truncation_radius(shallow, tol);
    CHECK(line_tail_bound(shallow, r2) <= 0.5 * tol);

    shallow.tail_decay = 0.4;
    CHECK_THROWS_AS(line_truncation_radius(shallow, tol), std::invalid_argument);
}

TEST_CASE("line integral: zero density, self-convergence, monotone truncation") {
    const auto symbol = instantiate_symbol("schrodinger_symbol");
    const auto weight = [](double alpha) {
        ComplexFunction u;
        u.value = [alpha](double p) { return Complex{std::pow(1.0 + p * p, -0.5 * alpha), 0.0}; };
        u.derivative = [alpha](double p) {
            return Complex{-alpha * p * std::pow(1.0 + p * p, -0.5 * alpha - 1.0), 0.0};
        };
        return u;
    };
    LineDensity d{0.0, 0.5, weight(4.0), 1.0, 4.0};
    PhaseDescriptor ph;
    ph.p0 = 0.0;
    ph.rho = 2.0;
    ph.psi.value = [](double p) { return -p * p; };
    ph.psi.derivative = [](double p) { return -2.0 * p; };
    ph.psi.second_derivative = [](double) { return -2.0; };
    ph.nondegenerate_part.value = [](double p) { return p == 0.0 ? -2.0 : -2.0 * (p > 0 ? 1.0 : -1.0); };

    LineDensity zero = d;
    zero.regular = constant_complex_function({0.0, 0.0});
    zero.tail_scale = 0.0;
    const auto qz = oscillatory_integral_line(zero, ph, 1.0, 1e-6);
    CHECK(std::abs(qz.value) == 0.0);
    CHECK(qz.truncation_tail_bound == 0.0);

    const auto coarse = oscillatory_integral_line(d, ph, 1.0, 1e-6);
    const auto fine = oscillatory_integral_line(d, ph, 1.0, 1e-7);
    CHECK(coarse.converged);
    CHECK(std::abs(coarse.value - fine.value) <= 10.0 * 1e-6);

    const double base_radius = line_truncation_radius(d, 1e-6);
    const auto extended = oscillatory_integral_line(d, ph, 1.0, 1e-6, 2.0 * base_radius);
    CHECK(std::abs(extended.value - coarse.value) <=
          coarse.truncation_tail_bound + coarse.abs_error_estimate + extended.abs_error_estimate);
}

TEST_CASE("sup norm examples") {
    CHECK(sup_norm(constant_function(1.0), Interval{0.0, 1.0}) == doctest::Approx(1.0));
    auto bump = [](double p) { return p * (1.0 - p); };
    CHECK(sup_norm(bump, Interval{0.0, 1.0}) == doctest::Approx(0.25).epsilon(1e-10));
    auto lorentz = [](double p) { return 1.0 / (1.0 + p * p); };
    CHECK(sup_norm(lorentz, Interval{-2.0, 3.0}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(sup_norm(lorentz, Interval{-2.0, 3.0}, 32), std::invalid_argument);
    auto pole = [](double p) { return 1.0 / p; };
    CHECK_THROWS_AS(sup_norm(pole, Interval{-1.0, 1.0}, 65), std::runtime_error);
}

TEST_CASE("derivative L1 norm examples") {
    RealFunction constant = constant_function(3.0);
    CHECK(l1_norm_derivative(constant, Interval{0.0, 1.0}).value == doctest::Approx(0.0));

    RealFunction ramp;
    ramp.value = [](double p) { return p; };
    ramp.derivative = [](double) { return 1.0; };
    CHECK(l1_norm_derivative(ramp, Interval{0.0, 1.0}).value == doctest::Approx(1.0).epsilon(1e-12));

    RealFunction lorentz;
    lorentz.value = [](double p) { return 1.0 / (1.0 + p * p); };
    lorentz.derivative = [](double p) {
        const double d = 1.0 + p * p;
        return -2.0 * p / (d * d);
    };
    CHECK(l1_norm_derivative(lorentz, Interval{0.0, 1.0}).value ==
          doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("minimum of |psi'| and the stationary-point error") {
    auto parabola = test::quadratic_phase(0.0);
    CHECK(min_abs_derivative(parabola, Interval{1.0, 2.0}) == doctest::Approx(2.0).epsilon(1e-10));
    CHECK_THROWS_AS(min_abs_derivative(parabola, Interval{-1.0, 1.0}), std::domain_error);

    const auto power = instantiate_phase("power_phase", {{"alpha", 1.5}});
    CHECK(min_abs_derivative(power, Interval{4.0, 9.0}) == doctest::Approx(8.0).epsilon(1e-10));
}
