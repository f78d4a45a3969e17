#pragma once

#include <algorithm>
#include <cmath>

#include "slitwave/geometry.hpp"
#include "slitwave/profile.hpp"

namespace slitwave {

// Geometric shadow width: the beam footprint is the convolution of two
// rectangles, the projected slit w1 = s2 (L1+L2)/L1 and the projected source
// w2 = s1 L2/L1; its FWHM (at half the plateau height) is max(w1, w2).
inline double classical_fwhm(const BeamlineGeometry& geom) {
    geom.validate();
    return std::max(geom.projected_slit_width(), geom.projected_source_width());
}

// Trapezoidal ray-model profile, rect(w1) (x) rect(w2), unit peak, centered at 0.
inline Profile classical_profile(const BeamlineGeometry& geom, const ScreenGrid& grid) {
    geom.validate();
    const double w1 = geom.projected_slit_width();
    const double w2 = geom.projected_source_width();
    const double wmin = std::min(w1, w2);
    const double half_base = 0.5 * (w1 + w2);

    std::vector<double> values(grid.points);
    for (std::size_t i = 0; i < grid.points; ++i) {
        const double overlap = std::clamp(half_base - std::abs(grid.x(i)), 0.0, wmin);
        values[i] = overlap / wmin;
    }
    return Profile(-grid.halfwidth, grid.pitch(), std::move(values));
}

}  // namespace slitwave
