#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "corput/core.hpp"
#include "corput/quadrature.hpp"
#include "corput/validation.hpp"

namespace corput {

enum class TheoremId {
    interior_stationary,   // stationary point inside the band, uniform in p0
    exterior_stationary,   // stationary point outside the band, uniform in p0
    uniform,               // position-independent combination of the two above
    nonstationary,         // no stationary point in the band, faster rate
};

inline std::string to_string(TheoremId id) {
    switch (id) {
        case TheoremId::interior_stationary: return "interior-stationary";
        case TheoremId::exterior_stationary: return "exterior-stationary";
        case TheoremId::uniform: return "uniform";
        case TheoremId::nonstationary: return "nonstationary";
    }
    return "unknown";
}

struct CertificateInputs {
    double mu = 1.0;
    double rho = 2.0;
    double sup_u = 0.0;
    double l1_du = 0.0;
    double m = 1.0;  // min |psit| on the band, or min |psi'| for the nonstationary case
};

/// (constant, decay exponent) pair tying a computed constant to the regime it
/// certifies: |I(omega)| <= constant * omega^exponent for all omega > 0.
struct BoundCertificate {
    double constant = 0.0;
    double exponent = 0.0;
    TheoremId theorem = TheoremId::uniform;
    bool refined = false;
    CertificateInputs inputs;

    double bound_at(double omega) const { return constant * std::pow(omega, exponent); }
};

namespace detail {

inline void require_positive_floor(double m, const char* who) {
    if (!(m > 0.0)) throw std::invalid_argument(std::string(who) + ": requires a positive minimum");
}

inline void require_refinable(double mu, bool refined, const char* who) {
    if (refined && mu != 1.0)
        throw std::invalid_argument(std::string(who) + ": refined form requires mu = 1");
    if (!(mu > 0.0) || !(mu <= 1.0))
        throw std::invalid_argument(std::string(who) + ": mu must lie in (0,1]");
}

}  // namespace detail

/// Stationary point inside the band:
///   general (3/mu) * sup + (8 * sup + 2 * l1)/m, refined 2 * sup + (6 * sup + 2 * l1)/m.
inline double decay_constant_interior(double mu, double sup_u, double l1_du, double m,
                                      bool refined = false) {
    detail::require_refinable(mu, refined, "decay_constant_interior");
    detail::require_positive_floor(m, "decay_constant_interior");
    if (refined) return 2.0 * sup_u + (6.0 * sup_u + 2.0 * l1_du) / m;
    return (3.0 / mu) * sup_u + (8.0 * sup_u + 2.0 * l1_du) / m;
}

/// Stationary point outside the band:
///   general (2/mu) * sup + (4 * sup + l1)/m, refined 2 * sup + (3 * sup + l1)/m.
inline double decay_constant_exterior(double mu, double sup_u, double l1_du, double m,
                                      bool refined = false) {
    detail::require_refinable(mu, refined, "decay_constant_exterior");
    detail::require_positive_floor(m, "decay_constant_exterior");
    if (refined) return 2.0 * sup_u + (3.0 * sup_u + l1_du) / m;
    return (2.0 / mu) * sup_u + (4.0 * sup_u + l1_du) / m;
}

/// Position-independent constant; same displayed formula as the interior case,
/// and an upper bound for the exterior constant on identical inputs.
inline double decay_constant_uniform(double mu, double sup_u, double l1_du, double m,
                                     bool refined = false) {
    detail::require_refinable(mu, refined, "decay_constant_uniform");
    detail::require_positive_floor(m, "decay_constant_uniform");
    if (refined) return 2.0 * sup_u + (6.0 * sup_u + 2.0 * l1_du) / m;
    return (3.0 / mu) * sup_u + (8.0 * sup_u + 2.0 * l1_du) / m;
}

/// No stationary point in the band; rate improves to omega^-mu but the
/// constant reads min |psi'| and blows up as a stationary point approaches:
///   general (1/mu) * sup + (4 * sup + l1)/min|psi'|, refined (3 * sup + l1)/min|psi'|.
inline double decay_constant_nonstationary(double mu, double sup_u, double l1_du,
                                           double min_psi_prime, bool refined = false) {
    detail::require_refinable(mu, refined, "decay_constant_nonstationary");
    detail::require_positive_floor(min_psi_prime, "decay_constant_nonstationary");
    if (refined) return (3.0 * sup_u + l1_du) / min_psi_prime;
    return (1.0 / mu) * sup_u + (4.0 * sup_u + l1_du) / min_psi_prime;
}

/// Decision procedure over the four estimates. Interior stationary point
/// (band endpoints count as interior) yields the single interior certificate;
/// an exterior stationary point yields BOTH applicable certificates, the
/// position-uniform one first, the faster nonstationary one second. Refined
/// mu = 1 variants are selected automatically.
inline std::vector<BoundCertificate> certify(const SingularAmplitude& a, const PhaseDescriptor& ph,
                                             int probes = 257) {
    {
        const ValidationReport ra = validate_amplitude(a, probes);
        if (!ra.ok()) throw std::invalid_argument("certify: invalid amplitude: " + ra.summary());
        const ValidationReport rp = validate_phase(ph, a.band(), probes);
        if (!rp.ok()) throw std::invalid_argument("certify: invalid phase: " + rp.summary());
    }

    const double sup_u = sup_norm(a.regular_part, a.band(), std::max(probes, 64));
    const NormResult l1 = l1_norm_derivative(a.regular_part, a.band());
    const double m = certified_minimum(
        [&ph](double p) { return std::abs(ph.nondegenerate_part.value(p)); }, a.band(), probes);
    const bool refined = a.mu == 1.0;

    std::vector<BoundCertificate> out;
    if (ph.p0 >= a.p1 && ph.p0 <= a.p2) {
        BoundCertificate cert;
        cert.constant = decay_constant_interior(a.mu, sup_u, l1.value, m, refined);
        cert.exponent = -a.mu / ph.rho;
        cert.theorem = TheoremId::interior_stationary;
        cert.refined = refined;
        cert.inputs = CertificateInputs{a.mu, ph.rho, sup_u, l1.value, m};
        out.push_back(cert);
        return out;
    }

    BoundCertificate uniform;
    uniform.constant = decay_constant_uniform(a.mu, sup_u, l1.value, m, refined);
    uniform.exponent = -a.mu / ph.rho;
    uniform.theorem = TheoremId::uniform;
    uniform.refined = refined;
    uniform.inputs = CertificateInputs{a.mu, ph.rho, sup_u, l1.value, m};
    out.push_back(uniform);

    const double min_dpsi = min_abs_derivative(ph, a.band(), probes);
    BoundCertificate fast;
    fast.constant = decay_constant_nonstationary(a.mu, sup_u, l1.value, min_dpsi, refined);
    fast.exponent = -a.mu;
    fast.theorem = TheoremId::nonstationary;
    fast.refined = refined;
    fast.inputs = CertificateInputs{a.mu, ph.rho, sup_u, l1.value, min_dpsi};
    out.push_back(fast);
    return out;
}

struct EnvelopeViolation {
    double omega = 0.0;
    double measured = 0.0;
    double bound = 0.0;
};

struct EnvelopeReport {
    std::vector<EnvelopeViolation> violations;
    double max_ratio = 0.0;
    int flagged = 0;
    std::string sweep;

    bool ok() const { return violations.empty(); }
};

/// Sweeps the certificate over the omega grid: the quadrature error estimate
/// is added to the measured modulus before comparison, so a reported violation
/// can never be a quadrature artifact.
inline EnvelopeReport verify_envelope(const BoundCertificate& cert, const SingularAmplitude& a,
                                      const PhaseDescriptor& ph, const std::vector<double>& omega_grid,
                                      double tol = kDefaultCompactTol) {
    if (omega_grid.empty()) throw std::invalid_argument("verify_envelope: empty grid");
    for (size_t k = 0; k < omega_grid.size(); ++k) {
        if (!(omega_grid[k] > 0.0) || (k > 0 && !(omega_grid[k] > omega_grid[k - 1])))
            throw std::invalid_argument("verify_envelope: grid must be positive and strictly increasing");
    }
    EnvelopeReport report;
    report.sweep = to_string(cert.theorem) + " certificate, " + std::to_string(omega_grid.size()) +
                   " omega in [" + std::to_string(omega_grid.front()) + ", " +
                   std::to_string(omega_grid.back()) + "]";
    for (double omega : omega_grid) {
        const QuadratureResult q = oscillatory_integral(a, ph, omega, tol);
        if (!q.converged) ++report.flagged;
        const double measured = std::abs(q.value) + q.abs_error_estimate;
        const double bound = cert.bound_at(omega);
        double ratio = 0.0;
        if (bound > 0.0) ratio = measured / bound;
        else if (measured > 0.0) ratio = std::numeric_limits<double>::infinity();
        report.max_ratio = std::max(report.max_ratio, ratio);
        if (ratio > 1.0) report.violations.push_back({omega, measured, bound});
    }
    return report;
}

}  // namespace corput
