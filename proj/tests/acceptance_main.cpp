// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "corput/corput.hpp"

using namespace corput;

namespace {

struct Criterion {
    bool pass = true;
    std::string detail;
};

double seconds_since(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct EnvelopeFamily {
    std::string label;
    SingularAmplitude amplitude;
    PhaseDescriptor phase;
    double mu;
    double rho;
};

std::vector<EnvelopeFamily> interior_families() {
    return {
        {"mu=1, rho=2", instantiate_amplitude("power_band_amplitude", {{"mu", 1.0}}),
         instantiate_phase("quadratic_phase", {{"p0", 0.0}}), 1.0, 2.0},
        {"mu=1/2, rho=2", instantiate_amplitude("power_band_amplitude", {{"mu", 0.5}}),
         instantiate_phase("quadratic_phase", {{"p0", 0.5}}), 0.5, 2.0},
        {"mu=3/4, rho=2", instantiate_amplitude("power_band_amplitude", {{"mu", 0.75}}),
         instantiate_phase("quadratic_phase", {{"p0", 0.5}}), 0.75, 2.0},
        {"mu=1, rho=3", instantiate_amplitude("power_band_amplitude", {{"mu", 1.0}}),
         instantiate_phase("cubic_phase", {{"p0", 0.5}}), 1.0, 3.0},
        {"mu=1/2, rho=5/2", instantiate_amplitude("power_band_amplitude", {{"mu", 0.5}}),
         instantiate_phase("power_phase", {{"alpha", 1.5}}), 0.5, 2.5},
    };
}

Criterion criterion_1_envelopes() {
    const auto start = std::chrono::steady_clock::now();
    Criterion c;
    const auto grid = geometric_grid(1.0, 1e4, 64);
    long violations = 0, flagged = 0;
    for (const auto& family : interior_families()) {
        const auto certs = certify(family.amplitude, family.phase);
        if (certs.size() != 1 || certs[0].theorem != TheoremId::interior_stationary ||
            std::abs(certs[0].exponent + family.mu / family.rho) > 1e-14) {
            c.pass = false;
            c.detail += family.label + ": wrong certificate; ";
            continue;
        }
        const auto report = verify_envelope(certs[0], family.amplitude, family.phase, grid);
        violations += static_cast<long>(report.violations.size());
        flagged += report.flagged;
    }
    const double wall = seconds_since(start);
    if (violations != 0 || flagged != 0 || wall >= 180.0) c.pass = false;
    c.detail += "violations=" + std::to_string(violations) + ", flagged=" + std::to_string(flagged) +
                ", wall=" + std::to_string(wall) + "s (budget 180s)";
    return c;
}

Criterion criterion_2_uniformity() {
    Criterion c;
    const auto amplitude = instantiate_amplitude("power_band_amplitude", {{"mu", 0.5}});
    const auto grid = geometric_grid(1.0, 1e4, 64);
    long violations = 0;
    double reference_constant = 0.0;
    for (int k = 0; k < 21; ++k) {
        const double p0 = -1.0 + 3.0 * k / 20.0;
        const auto phase = instantiate_phase("quadratic_phase", {{"p0", p0}});
        const auto certs = certify(amplitude, phase);
        const BoundCertificate& slow = certs.front();
        if (k == 0) reference_constant = slow.constant;
        if (slow.constant != reference_constant) {
            c.pass = false;
            c.detail += "constant depends on p0; ";
        }
        BoundCertificate uniform = slow;
        uniform.theorem = TheoremId::uniform;
        uniform.constant = reference_constant;
        const auto report = verify_envelope(uniform, amplitude, phase, grid);
        violations += static_cast<long>(report.violations.size());
    }
    if (violations != 0) c.pass = false;
    c.detail += "21 sweeps, constant=" + std::to_string(reference_constant) +
                ", violations=" + std::to_string(violations);
    return c;
}

Criterion criterion_3_tradeoff() {
    Criterion c;
    const auto amplitude = instantiate_amplitude("power_band_amplitude", {{"mu", 0.5}});
    double previous_fast = 0.0;
    double uniform_reference = -1.0;
    for (int k = 0; k <= 6; ++k) {
        const double p0 = 1.0 + std::pow(2.0, -k);
        const auto certs = certify(amplitude, instantiate_phase("quadratic_phase", {{"p0", p0}}));
        if (certs.size() != 2) {
            c.pass = false;
            c.detail = "expected the exterior certificate pair";
            return c;
        }
        const double uniform = certs[0].constant;
        const double fast = certs[1].constant;
        if (uniform_reference < 0.0) uniform_reference = uniform;
        if (uniform != uniform_reference) {
            c.pass = false;
            c.detail += "uniform constant drifted at k=" + std::to_string(k) + "; ";
        }
        if (!(fast > previous_fast)) {
            c.pass = false;
            c.detail += "nonstationary constant not increasing at k=" + std::to_string(k) + "; ";
        }
        previous_fast = fast;
    }
    c.detail += "uniform constant fixed at " + std::to_string(uniform_reference) +
                ", nonstationary grew to " + std::to_string(previous_fast);
    return c;
}

Criterion criterion_4_constants() {
    Criterion c;
    const auto parabolic = instantiate_symbol("schrodinger_symbol");
    const BandDatum flat_band{instantiate_amplitude("power_band_amplitude", {{"mu", 0.5}})};
    const auto band_set = band_constants(flat_band, parabolic, -1.0, 2.0);
    LineSingularDatum flat_line;
    flat_line.p1 = 0.0;
    flat_line.mu = 0.5;
    flat_line.regular = constant_complex_function({1.0, 0.0});
    flat_line.sup_u = 1.0;
    flat_line.l1_du = 0.0;
    const auto off_set = offcone_constants(flat_line, parabolic, 1.0, 2.0, 0.5);

    const std::vector<std::pair<double, double>> checks = {
        {decay_constant_interior(1.0, 1.0, 0.0, 1.0), 11.0},
        {decay_constant_interior(0.5, 1.0, 0.0, 2.0), 10.0},
        {decay_constant_interior(1.0, 1.0, 0.0, 1.0, true), 8.0},
        {decay_constant_exterior(1.0, 1.0, 0.0, 1.0), 6.0},
        {decay_constant_exterior(0.5, 1.0, 1.0, 2.0), 6.5},
        {decay_constant_nonstationary(1.0, 1.0, 0.0, 1.0), 5.0},
        {decay_constant_nonstationary(0.5, 2.0, 1.0, 4.0), 6.25},
        {decay_constant_nonstationary(1.0, 1.0, 0.0, 1.0, true), 3.0},
        {band_set.constants.at("c_inside"), 5.0 / kPi},
        {band_set.constants.at("c_outside"), 4.0 / kPi},
        {linfty_band_bound(flat_band, parabolic, -1.0, 2.0, 1.0), 9.0 / kPi},
        {off_set.constants.at("c2"), 6.0 / kPi},
    };
    int mismatches = 0;
    for (const auto& [got, expected] : checks)
        if (std::abs(got - expected) > 1e-12 * std::abs(expected)) ++mismatches;
    if (mismatches != 0) c.pass = false;
    c.detail = std::to_string(checks.size()) + " hand values, mismatches=" +
               std::to_string(mismatches) + " (relative 1e-12)";
    return c;
}

Criterion criterion_5_decay_exponents() {
    const auto start = std::chrono::steady_clock::now();
    Criterion c;

    const auto flat_regular = instantiate_amplitude("power_band_amplitude", {{"mu", 1.0}});
    std::vector<std::pair<double, double>> fresnel_samples;
    for (double omega : geometric_grid(1e2, 1e4, 48)) {
        const auto q = oscillatory_integral(flat_regular,
                                            instantiate_phase("quadratic_phase", {{"p0", 0.0}}), omega);
        fresnel_samples.emplace_back(omega, std::abs(q.value));
    }
    const auto fresnel_fit = fit_decay(fresnel_samples, {1e2, 1e4});
    if (std::abs(fresnel_fit.slope + 0.5) > 0.05) {
        c.pass = false;
        c.detail += "stationary-endpoint slope off: ";
    }
    c.detail += "stationary slope=" + std::to_string(fresnel_fit.slope);

    std::vector<std::pair<double, double>> nonstationary_samples;
    for (double omega : geometric_grid(1.0, 1e4, 64)) {
        const auto q = oscillatory_integral(flat_regular,
                                            instantiate_phase("quadratic_phase", {{"p0", 2.0}}), omega);
        nonstationary_samples.emplace_back(omega, std::abs(q.value));
    }
    const auto nonstationary_fit = fit_decay(nonstationary_samples);  // lowest decade discarded
    if (std::abs(nonstationary_fit.slope + 1.0) > 0.05) {
        c.pass = false;
        c.detail += " nonstationary slope off:";
    }
    c.detail += ", nonstationary slope=" + std::to_string(nonstationary_fit.slope);

    const auto vanishing =
        std::get<BandDatum>(instantiate_datum("vanishing_edge_datum", {{"mu", 0.5}}));
    const auto probe = optimality_probe(vanishing, instantiate_symbol("schrodinger_symbol"),
                                        geometric_grid(1.0, 1e3, 33));
    if (std::abs(probe.slope + 0.25) > 0.05) {
        c.pass = false;
        c.detail += " optimality slope off:";
    }
    c.detail += ", optimality slope=" + std::to_string(probe.slope);

    const double wall = seconds_since(start);
    if (wall >= 300.0) c.pass = false;
    c.detail += ", wall=" + std::to_string(wall) + "s (budget 300s)";
    return c;
}

Criterion criterion_6_band_cone_suite() {
    Criterion c;
    const InitialDatum datum = instantiate_datum("band_datum", {{"mu", 0.5}});
    const auto& band = std::get<BandDatum>(datum);
    const auto symbol = instantiate_symbol("schrodinger_symbol");
    const auto set = band_constants(band, symbol, -1.0, 2.0);
    const double lo = *set.cone.lo, hi = *set.cone.hi;

    const auto inside_rays = ray_velocities(lo, hi, 33);
    std::vector<double> outside_rays;
    for (int k = 0; k < 8; ++k) {
        outside_rays.push_back(lo - 5.0 + (k + 0.5) * 5.0 / 8.0);
        outside_rays.push_back(hi + (k + 0.5) * 5.0 / 8.0);
    }

    long violations = 0, flagged = 0;
    for (double t : {1.0, 3.16, 10.0, 31.6, 100.0}) {
        for (const auto& s : sample_rays(datum, symbol, t, inside_rays)) {
            if (s.magnitude + s.error > set.bound("c_inside", t)) ++violations;
            if (!s.converged) ++flagged;
        }
        for (const auto& s : sample_rays(datum, symbol, t, outside_rays)) {
            if (s.magnitude + s.error > set.bound("c_outside", t)) ++violations;
            if (!s.converged) ++flagged;
        }
    }
    if (violations != 0 || flagged != 0) c.pass = false;
    c.detail = "c_inside=" + std::to_string(set.constants.at("c_inside")) +
               ", c_outside=" + std::to_string(set.constants.at("c_outside")) +
               ", violations=" + std::to_string(violations) + ", flagged=" + std::to_string(flagged);
    return c;
}

Criterion criterion_7_global_and_concentration() {
    Criterion c;
    const InitialDatum datum = instantiate_datum("weighted_datum", {{"mu", 0.5}, {"alpha", 4.0}});
    const auto& weighted = std::get<WeightedDatum>(datum);
    const auto symbol = instantiate_symbol("half_klein_gordon_symbol");

    const auto global_set = global_linfty_constants(weighted, symbol);
    const auto conc_set = concentration_constants(weighted, symbol);
    const double a = *conc_set.cone.lo, b = *conc_set.cone.hi;

    long violations = 0, flagged = 0;
    const auto global_rays = ray_velocities(a - 5.0, b + 5.0, 33);
    auto offcone_rays = ray_velocities(a - 5.0, a - 0.1, 8);
    for (double v : ray_velocities(b + 0.1, b + 5.0, 8)) offcone_rays.push_back(v);
    for (double t : {1.0, 3.16, 10.0, 31.6, 100.0}) {
        for (const auto& s : sample_rays(datum, symbol, t, global_rays)) {
            if (s.magnitude + s.error > global_set.total_bound(t)) ++violations;
            if (!s.converged) ++flagged;
        }
        for (const auto& s : sample_rays(datum, symbol, t, offcone_rays)) {
            if (s.magnitude + s.error > conc_set.total_bound(t)) ++violations;
            if (!s.converged) ++flagged;
        }
    }

    const double band_sum = band_series_partial_sum(weighted, symbol, 100000);
    const double offcone_sum = offcone_series_partial_sum(weighted, symbol, 100000);
    const bool sums_ok = band_sum <= global_set.constants.at("c2") &&
                         offcone_sum <= conc_set.constants.at("c2");
    if (violations != 0 || flagged != 0 || !sums_ok) c.pass = false;
    c.detail = "violations=" + std::to_string(violations) + ", flagged=" + std::to_string(flagged) +
               ", band series " + std::to_string(band_sum) + " <= " +
               std::to_string(global_set.constants.at("c2")) + ", off-cone series " +
               std::to_string(offcone_sum) + " <= " + std::to_string(conc_set.constants.at("c2"));
    return c;
}

Criterion criterion_8_conservation() {
    Criterion c;
    const InitialDatum datum = instantiate_datum("band_datum", {{"mu", 1.0}});
    const auto symbol = instantiate_symbol("schrodinger_symbol");
    double lo_norm = std::numeric_limits<double>::infinity(), hi_norm = 0.0;
    for (double t : {1.0, 2.0, 5.0}) {
        const double norm = discrete_l2_norm(datum, symbol, t, -195.0, 205.0, 0.5);
        lo_norm = std::min(lo_norm, norm);
        hi_norm = std::max(hi_norm, norm);
    }
    const double drift = hi_norm / lo_norm - 1.0;
    if (!(drift <= 1e-3)) c.pass = false;
    c.detail = "relative drift=" + std::to_string(drift) + " (budget 1e-3), norm~" +
               std::to_string(0.5 * (lo_norm + hi_norm));
    return c;
}

Criterion criterion_9_lemmas() {
    Criterion c;
    long violations = 0;

    std::mt19937 rng(73110u);
    std::uniform_real_distribution<double> alpha_dist(1e-9, 1.0);
    std::uniform_real_distribution<double> x_dist(0.0, 1e3);
    std::uniform_real_distribution<double> frac(0.0, 1.0);
    for (int k = 0; k < 10000; ++k) {
        const double alpha = alpha_dist(rng);
        const double x = x_dist(rng);
        const double y = x * frac(rng);
        if (lemma_concavity_gap(alpha, x, y) < -1e-12 * std::max(1.0, std::pow(x, alpha)))
            ++violations;
    }

    std::uniform_int_distribution<long long> cell(2, 10000);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int k = 0; k < 10000; ++k) {
        long long n = cell(rng);
        if (coin(rng)) n = -n;
        const double p = static_cast<double>(n) + frac(rng);
        if (!lemma_dyadic_comparability(n, p)) ++violations;
    }

    for (double sigma : {1.1, 1.5, 2.0, 3.0, 11.0}) {
        double partial = 0.0;
        for (long long n = 1000000; n >= 1; --n) partial += std::pow(static_cast<double>(n), -sigma);
        if (!(partial <= zeta_tail_bound(sigma))) ++violations;
    }

    if (violations != 0) c.pass = false;
    c.detail = "2x10^4 randomized lemma checks + 5 zeta partial sums, violations=" +
               std::to_string(violations);
    return c;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, Criterion (*)()>> criteria = {
        {"interior-stationary envelope suite, 5 families x 64 omega", criterion_1_envelopes},
        {"position-uniform constant over 21 stationary points", criterion_2_uniformity},
        {"exterior trade-off: rate vs constant blow-up", criterion_3_tradeoff},
        {"hand-computed constants at relative 1e-12", criterion_4_constants},
        {"empirical decay exponents (stationary, nonstationary, optimality)",
         criterion_5_decay_exponents},
        {"band-cone suite: inside/outside rates", criterion_6_band_cone_suite},
        {"global L-infinity and concentration suite with series bounds",
         criterion_7_global_and_concentration},
        {"truncated-grid L2 conservation drift", criterion_8_conservation},
        {"lemma suite: randomized inequalities and zeta partial sums", criterion_9_lemmas},
    };

    int failures = 0;
    for (size_t k = 0; k < criteria.size(); ++k) {
        Criterion result;
        try {
            result = criteria[k].second();
        } catch (const std::exception& e) {
            result.pass = false;
            result.detail = std::string("exception: ") + e.what();
        }
        if (!result.pass) ++failures;
        std::printf("[%s] criterion %zu: %s -- %s\n", result.pass ? "PASS" : "FAIL", k + 1,
                    criteria[k].first.c_str(), result.detail.c_str());
        std::fflush(stdout);
    }
    return failures;
}
