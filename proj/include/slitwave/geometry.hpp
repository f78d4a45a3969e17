#pragma once

#include <string>

#include "slitwave/errors.hpp"

namespace slitwave {

// Two-slit collimation beamline: source slit S1, drift L1, diffraction slit S2
// (width s2_width, the position uncertainty), drift L2 to the detection plane.
struct BeamlineGeometry {
    double s1_width;  // m
    double s2_width;  // m
    double drift_l1;  // m, S1 -> S2
    double drift_l2;  // m, S2 -> detector

    void validate() const {
        if (!(s1_width > 0.0) || !(s2_width > 0.0) || !(drift_l1 > 0.0) || !(drift_l2 > 0.0))
            throw DomainError("beamline lengths and slit widths must be strictly positive");
        if (s2_width > s1_width * 1e3)
            throw DomainError("s2_width implausibly large relative to s1_width");
    }

    // Geometric image of S1 at the detector, rays pivoting on S2.
    double projected_source_width() const { return s1_width * drift_l2 / drift_l1; }

    // Geometric spread of S2 illuminated from a point on S1.
    double projected_slit_width() const { return s2_width * (drift_l1 + drift_l2) / drift_l1; }

    BeamlineGeometry with_slit(double s2) const {
        BeamlineGeometry g = *this;
        g.s2_width = s2;
        return g;
    }
};

// The published experiment: S1 = 10 um, L1 = 113 cm, L2 = 133 cm.
inline BeamlineGeometry reference_geometry(double s2_width = 1.4e-6) {
    return BeamlineGeometry{10e-6, s2_width, 1.13, 1.33};
}

}  // namespace slitwave
