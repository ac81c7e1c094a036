#pragma once

#include <utility>

#include "corput/core.hpp"

namespace corput {

/// Maps a problem whose amplitude is singular at the RIGHT endpoint (mirror
/// convention: the passed fields describe U(p) = (p2 - p)^(mu-1) * u~(p)) to
/// the canonical left-singular form via p -> p1 + p2 - p. The oscillatory
/// integral of the returned pair equals that of the original exactly.
inline std::pair<SingularAmplitude, PhaseDescriptor> reflect_band(const SingularAmplitude& a,
                                                                  const PhaseDescriptor& ph) {
    const double s = a.p1 + a.p2;

    SingularAmplitude out_amp;
    out_amp.p1 = a.p1;
    out_amp.p2 = a.p2;
    out_amp.mu = a.mu;
    out_amp.regular_part.domain = a.regular_part.domain;
    {
        auto value = a.regular_part.value;
        out_amp.regular_part.value = [s, value](double p) { return value(s - p); };
        if (a.regular_part.has_derivative()) {
            auto deriv = a.regular_part.derivative;
            out_amp.regular_part.derivative = [s, deriv](double p) { return -deriv(s - p); };
        }
        if (a.regular_part.has_second_derivative()) {
            auto dd = a.regular_part.second_derivative;
            out_amp.regular_part.second_derivative = [s, dd](double p) { return dd(s - p); };
        }
    }

    PhaseDescriptor out_ph;
    out_ph.p0 = s - ph.p0;
    out_ph.rho = ph.rho;
    {
        auto value = ph.psi.value;
        out_ph.psi.value = [s, value](double p) { return value(s - p); };
        auto deriv = ph.psi.derivative;
        out_ph.psi.derivative = [s, deriv](double p) { return -deriv(s - p); };
        if (ph.psi.has_second_derivative()) {
            auto dd = ph.psi.second_derivative;
            out_ph.psi.second_derivative = [s, dd](double p) { return dd(s - p); };
        }
        out_ph.psi.domain = Interval{s - ph.psi.domain.hi, s - ph.psi.domain.lo};
    }
    {
        // psi_hat'(p) = -psi'(s - p) = |p - (s - p0)|^(rho-1) * (-psit(s - p)).
        auto nd = ph.nondegenerate_part.value;
        out_ph.nondegenerate_part.value = [s, nd](double p) { return -nd(s - p); };
        out_ph.nondegenerate_part.domain =
            Interval{s - ph.nondegenerate_part.domain.hi, s - ph.nondegenerate_part.domain.lo};
    }
    return {out_amp, out_ph};
}

}  // namespace corput
