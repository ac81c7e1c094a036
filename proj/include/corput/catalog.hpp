#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "corput/core.hpp"
#include "corput/dispersive.hpp"
#include "corput/validation.hpp"

namespace corput {

using CatalogValue = std::variant<SingularAmplitude, PhaseDescriptor, SymbolDescriptor, InitialDatum>;
using CatalogParams = std::map<std::string, double>;

struct ParamSpec {
    std::string name;
    double default_value = 0.0;
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool lo_open = false;
    bool hi_open = false;
    std::string doc;
};

enum class CatalogKind { amplitude, phase, symbol, datum };

inline std::string to_string(CatalogKind kind) {
    switch (kind) {
        case CatalogKind::amplitude: return "amplitude";
        case CatalogKind::phase: return "phase";
        case CatalogKind::symbol: return "symbol";
        case CatalogKind::datum: return "datum";
    }
    return "unknown";
}

struct CatalogEntry {
    std::string name;
    CatalogKind kind = CatalogKind::amplitude;
    std::vector<ParamSpec> params;
    std::string doc;
    std::function<CatalogValue(const CatalogParams&)> builder;
};

namespace detail {

inline double sign_of(double x) { return x >= 0.0 ? 1.0 : -1.0; }

inline CatalogParams resolve_params(const CatalogEntry& entry, const CatalogParams& given) {
    CatalogParams resolved;
    for (const auto& spec : entry.params) resolved[spec.name] = spec.default_value;
    for (const auto& [key, value] : given) {
        bool known = false;
        for (const auto& spec : entry.params) {
            if (spec.name != key) continue;
            known = true;
            const bool below = spec.lo_open ? !(value > spec.lo) : !(value >= spec.lo);
            const bool above = spec.hi_open ? !(value < spec.hi) : !(value <= spec.hi);
            if (below || above)
                throw std::invalid_argument("catalog: parameter '" + key + "' of '" + entry.name +
                                            "' out of documented range");
            resolved[key] = value;
        }
        if (!known)
            throw std::invalid_argument("catalog: unknown parameter '" + key + "' for '" +
                                        entry.name + "'");
    }
    return resolved;
}

inline SingularAmplitude build_linear_regular_amplitude(double mu, double p1, double p2, double c0,
                                                        double c1) {
    SingularAmplitude a;
    a.p1 = p1;
    a.p2 = p2;
    a.mu = mu;
    a.regular_part.value = [c0, c1, p1](double p) { return Complex{c0 + c1 * (p - p1), 0.0}; };
    a.regular_part.derivative = [c1](double) { return Complex{c1, 0.0}; };
    a.regular_part.second_derivative = [](double) { return Complex{0.0, 0.0}; };
    return a;
}

inline PhaseDescriptor build_quadratic_phase(double p0) {
    PhaseDescriptor ph;
    ph.p0 = p0;
    ph.rho = 2.0;
    ph.psi.value = [p0](double p) { return 2.0 * p0 * p - p * p; };
    ph.psi.derivative = [p0](double p) { return 2.0 * (p0 - p); };
    ph.psi.second_derivative = [](double) { return -2.0; };
    ph.nondegenerate_part.value = [p0](double p) { return p == p0 ? -2.0 : -2.0 * sign_of(p - p0); };
    return ph;
}

inline PhaseDescriptor build_power_phase(double alpha) {
    PhaseDescriptor ph;
    ph.p0 = 0.0;
    ph.rho = alpha + 1.0;
    ph.psi.value = [alpha](double p) {
        return sign_of(p) * std::pow(std::abs(p), alpha + 1.0) / (alpha + 1.0);
    };
    ph.psi.derivative = [alpha](double p) { return std::pow(std::abs(p), alpha); };
    ph.psi.second_derivative = [alpha](double p) {
        return p == 0.0 ? 0.0 : alpha * sign_of(p) * std::pow(std::abs(p), alpha - 1.0);
    };
    ph.nondegenerate_part = constant_function(1.0);
    return ph;
}

inline PhaseDescriptor build_cubic_phase(double p0) {
    PhaseDescriptor ph;
    ph.p0 = p0;
    ph.rho = 3.0;
    ph.psi.value = [p0](double p) { return -std::pow(p - p0, 3.0) / 3.0; };
    ph.psi.derivative = [p0](double p) { return -(p - p0) * (p - p0); };
    ph.psi.second_derivative = [p0](double p) { return -2.0 * (p - p0); };
    ph.nondegenerate_part = constant_function(-1.0);
    return ph;
}

inline SymbolDescriptor build_parabolic_symbol() {
    SymbolDescriptor s;
    s.f.value = [](double p) { return p * p; };
    s.f.derivative = [](double p) { return 2.0 * p; };
    s.f.second_derivative = [](double) { return 2.0; };
    s.convexity_floor = 2.0;
    return s;
}

inline SymbolDescriptor build_half_klein_gordon_symbol() {
    SymbolDescriptor s;
    s.f.value = [](double p) { return std::sqrt(1.0 + p * p); };
    s.f.derivative = [](double p) { return p / std::sqrt(1.0 + p * p); };
    s.f.second_derivative = [](double p) { return std::pow(1.0 + p * p, -1.5); };
    s.lower_envelope = ConvexityLowerEnvelope{1.0, std::pow(2.0, -1.5), 3.0};
    s.upper_envelope = ConvexityUpperEnvelope{1.0, 3.0};
    s.asymptotic_velocities = std::make_pair(-1.0, 1.0);
    return s;
}

inline ComplexFunction build_weight_regular(double alpha) {
    ComplexFunction u;
    u.value = [alpha](double p) { return Complex{std::pow(1.0 + p * p, -0.5 * alpha), 0.0}; };
    u.derivative = [alpha](double p) {
        return Complex{-alpha * p * std::pow(1.0 + p * p, -0.5 * alpha - 1.0), 0.0};
    };
    return u;
}

}  // namespace detail

/// Named, constructor-checked instances used by the tests and the CLI.
inline const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = [] {
        std::vector<CatalogEntry> list;

        list.push_back(CatalogEntry{
            "power_band_amplitude",
            CatalogKind::amplitude,
            {{"mu", 1.0, 0.0, 1.0, true, false, "singularity strength, (0,1]"},
             {"p1", 0.0, -100.0, 100.0, false, false, "left (singular) endpoint"},
             {"p2", 1.0, -100.0, 100.0, false, false, "right endpoint, > p1"},
             {"c0", 1.0, -1e6, 1e6, false, false, "regular part constant coefficient"},
             {"c1", 0.0, -1e6, 1e6, false, false, "regular part linear coefficient in (p - p1)"}},
            "(p-p1)^(mu-1) * (c0 + c1 (p-p1)) on [p1, p2]",
            [](const CatalogParams& p) -> CatalogValue {
                if (!(p.at("p1") < p.at("p2")))
                    throw std::invalid_argument("catalog: power_band_amplitude needs p1 < p2");
                if (p.at("mu") != 1.0 && p.at("c0") == 0.0)
                    throw std::invalid_argument(
                        "catalog: power_band_amplitude needs c0 != 0 when mu != 1");
                return detail::build_linear_regular_amplitude(p.at("mu"), p.at("p1"), p.at("p2"),
                                                              p.at("c0"), p.at("c1"));
            }});

        list.push_back(CatalogEntry{
            "vanishing_edge_amplitude",
            CatalogKind::amplitude,
            {{"mu", 0.5, 0.0, 1.0, true, false, "singularity strength, (0,1]"},
             {"scale", 1.0, -1e6, 1e6, false, false, "overall scale"}},
            "(p)^(mu-1) * scale * (1 - p) on [0, 1]; regular part vanishes at the right edge",
            [](const CatalogParams& p) -> CatalogValue {
                SingularAmplitude a;
                a.p1 = 0.0;
                a.p2 = 1.0;
                a.mu = p.at("mu");
                const double scale = p.at("scale");
                a.regular_part.value = [scale](double q) { return Complex{scale * (1.0 - q), 0.0}; };
                a.regular_part.derivative = [scale](double) { return Complex{-scale, 0.0}; };
                a.regular_part.second_derivative = [](double) { return Complex{0.0, 0.0}; };
                return a;
            }});

        list.push_back(CatalogEntry{
            "quadratic_phase",
            CatalogKind::phase,
            {{"p0", 0.0, -100.0, 100.0, false, false, "stationary point"}},
            "psi(p) = 2 p0 p - p^2; order-1 stationary point at p0, |nondegenerate part| = 2",
            [](const CatalogParams& p) -> CatalogValue { return detail::build_quadratic_phase(p.at("p0")); }});

        list.push_back(CatalogEntry{
            "power_phase",
            CatalogKind::phase,
            {{"alpha", 1.5, 1.0, 3.0, true, false, "psi'(p) = |p|^alpha; order parameter alpha + 1"}},
            "psi'(p) = |p|^alpha with stationary point 0 of non-integer order",
            [](const CatalogParams& p) -> CatalogValue { return detail::build_power_phase(p.at("alpha")); }});

        list.push_back(CatalogEntry{
            "cubic_phase",
            CatalogKind::phase,
            {{"p0", 0.5, -100.0, 100.0, false, false, "stationary point"}},
            "psi(p) = -(p - p0)^3 / 3; order-2 stationary point at p0",
            [](const CatalogParams& p) -> CatalogValue { return detail::build_cubic_phase(p.at("p0")); }});

        list.push_back(CatalogEntry{
            "schrodinger_symbol",
            CatalogKind::symbol,
            {},
            "f(p) = p^2 with constant curvature 2 (declared as the convexity floor)",
            [](const CatalogParams&) -> CatalogValue { return detail::build_parabolic_symbol(); }});

        list.push_back(CatalogEntry{
            "half_klein_gordon_symbol",
            CatalogKind::symbol,
            {},
            "f(p) = sqrt(1 + p^2); curvature envelopes 2^(-3/2)|p|^-3 <= f'' <= |p|^-3 for |p| >= 1, "
            "velocity range (-1, 1)",
            [](const CatalogParams&) -> CatalogValue { return detail::build_half_klein_gordon_symbol(); }});

        list.push_back(CatalogEntry{
            "band_datum",
            CatalogKind::datum,
            {{"mu", 1.0, 0.0, 1.0, true, false, "singularity strength, (0,1]"},
             {"p1", 0.0, -100.0, 100.0, false, false, "left (singular) endpoint"},
             {"p2", 1.0, -100.0, 100.0, false, false, "right endpoint, > p1"},
             {"c0", 1.0, -1e6, 1e6, false, false, "regular part constant coefficient"},
             {"c1", 0.0, -1e6, 1e6, false, false, "regular part linear coefficient"}},
            "compact-band datum with density (p-p1)^(mu-1) (c0 + c1 (p-p1)) on [p1, p2]",
            [](const CatalogParams& p) -> CatalogValue {
                if (!(p.at("p1") < p.at("p2")))
                    throw std::invalid_argument("catalog: band_datum needs p1 < p2");
                if (p.at("mu") != 1.0 && p.at("c0") == 0.0)
                    throw std::invalid_argument("catalog: band_datum needs c0 != 0 when mu != 1");
                return InitialDatum{BandDatum{detail::build_linear_regular_amplitude(
                    p.at("mu"), p.at("p1"), p.at("p2"), p.at("c0"), p.at("c1"))}};
            }});

        list.push_back(CatalogEntry{
            "vanishing_edge_datum",
            CatalogKind::datum,
            {{"mu", 0.5, 0.0, 1.0, true, false, "singularity strength, (0,1]"}},
            "band datum p^(mu-1) (1 - p) on [0, 1]; regular part vanishes at the right edge",
            [](const CatalogParams& p) -> CatalogValue {
                SingularAmplitude a;
                a.p1 = 0.0;
                a.p2 = 1.0;
                a.mu = p.at("mu");
                a.regular_part.value = [](double q) { return Complex{1.0 - q, 0.0}; };
                a.regular_part.derivative = [](double) { return Complex{-1.0, 0.0}; };
                a.regular_part.second_derivative = [](double) { return Complex{0.0, 0.0}; };
                return InitialDatum{BandDatum{a}};
            }});

        list.push_back(CatalogEntry{
            "weighted_datum",
            CatalogKind::datum,
            {{"mu", 0.5, 0.0, 1.0, true, false, "singularity strength, (0,1]"},
             {"alpha", 4.0, 1.0, 12.0, true, false, "weight decay exponent"}},
            "density |p|^(mu-1) (1+p^2)^(-alpha/2); envelope scale 1, band-wise derivative scale "
            "2^alpha from radius 2",
            [](const CatalogParams& p) -> CatalogValue {
                WeightedDatum d;
                d.mu = p.at("mu");
                d.alpha = p.at("alpha");
                d.r = 2.0;
                d.envelope_scale = 1.0;
                d.band_l1_scale = std::pow(2.0, d.alpha);
                d.regular = detail::build_weight_regular(d.alpha);
                d.sup_u = 1.0;
                d.l1_du = 2.0;
                return InitialDatum{d};
            }});

        list.push_back(CatalogEntry{
            "line_singular_datum",
            CatalogKind::datum,
            {{"mu", 0.5, 0.0, 1.0, true, false, "singularity strength, (0,1]"},
             {"alpha", 4.0, 1.0, 12.0, true, false, "tail decay exponent of the density envelope"}},
            "whole-line datum |p|^(mu-1) (1+p^2)^(-alpha/2) viewed through its global norms "
            "(sup 1, derivative L1 norm 2)",
            [](const CatalogParams& p) -> CatalogValue {
                LineSingularDatum d;
                d.p1 = 0.0;
                d.mu = p.at("mu");
                d.regular = detail::build_weight_regular(p.at("alpha"));
                d.sup_u = 1.0;
                d.l1_du = 2.0;
                d.tail_scale = 1.0;
                d.tail_decay = p.at("alpha");
                return InitialDatum{d};
            }});

        return list;
    }();
    return entries;
}

inline const CatalogEntry& catalog_entry(const std::string& name) {
    for (const auto& entry : catalog())
        if (entry.name == name) return entry;
    throw std::invalid_argument("catalog: unknown name '" + name + "'");
}

/// Builds the named instance and runs its module validator; a failed
/// validation is a construction error.
inline CatalogValue instantiate(const std::string& name, const CatalogParams& params = {}) {
    const CatalogEntry& entry = catalog_entry(name);
    const CatalogParams resolved = detail::resolve_params(entry, params);
    CatalogValue value = entry.builder(resolved);

    ValidationReport report;
    if (const auto* a = std::get_if<SingularAmplitude>(&value)) {
        report = validate_amplitude(*a);
    } else if (const auto* ph = std::get_if<PhaseDescriptor>(&value)) {
        const Interval band{ph->p0 - 1.0, ph->p0 + 1.0};
        report = validate_phase(*ph, band);
    } else if (const auto* s = std::get_if<SymbolDescriptor>(&value)) {
        report = validate_symbol(*s, Interval{-10.0, 10.0});
    } else {
        report = validate_datum(std::get<InitialDatum>(value));
    }
    if (!report.ok())
        throw std::logic_error("catalog: instance '" + name + "' failed validation: " + report.summary());
    return value;
}

inline SingularAmplitude instantiate_amplitude(const std::string& name, const CatalogParams& params = {}) {
    return std::get<SingularAmplitude>(instantiate(name, params));
}
inline PhaseDescriptor instantiate_phase(const std::string& name, const CatalogParams& params = {}) {
    return std::get<PhaseDescriptor>(instantiate(name, params));
}
inline SymbolDescriptor instantiate_symbol(const std::string& name, const CatalogParams& params = {}) {
    return std::get<SymbolDescriptor>(instantiate(name, params));
}
inline InitialDatum instantiate_datum(const std::string& name, const CatalogParams& params = {}) {
    return std::get<InitialDatum>(instantiate(name, params));
}

}  // namespace corput
