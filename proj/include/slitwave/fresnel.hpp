#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "slitwave/beam.hpp"
#include "slitwave/classical.hpp"
#include "slitwave/constants.hpp"
#include "slitwave/errors.hpp"
#include "slitwave/geometry.hpp"
#include "slitwave/profile.hpp"

namespace slitwave {

struct PropagationSettings {
    std::size_t n_source_points = 65;
    std::size_t n_velocity_samples = 33;
    double screen_halfwidth = 0.0;  // m; 0 = choose automatically
    std::size_t screen_points = 2048;
    double max_phase_step = constants::pi / 4.0;

    void validate() const {
        if (n_source_points < 1 || n_velocity_samples < 1)
            throw DomainError("source and velocity sample counts must be >= 1");
        if (screen_points < 64) throw DomainError("screen_points must be >= 64");
        if (!(max_phase_step > 0.0 && max_phase_step <= constants::pi / 2.0))
            throw DomainError("max_phase_step must lie in (0, pi/2]");
    }
};

// Screen window wide enough for both regimes: the classical shadow and the
// central diffraction lobe.
inline double default_screen_halfwidth(const BeamlineGeometry& geom, double wavelength) {
    const double shadow = classical_fwhm(geom);
    const double lobe = 0.886 * wavelength * geom.drift_l2 / geom.s2_width;
    return std::max(4.0 * shadow, 6.0 * lobe);
}

inline ScreenGrid resolve_screen_grid(const BeamlineGeometry& geom, double wavelength,
                                      const PropagationSettings& settings) {
    const double half = settings.screen_halfwidth > 0.0
                            ? settings.screen_halfwidth
                            : default_screen_halfwidth(geom, wavelength);
    return ScreenGrid{half, settings.screen_points};
}

namespace detail {

// Aperture node count so that adjacent quadrature samples differ in phase by at
// most max_phase_step for every screen point within |x| <= screen_reach.
inline std::size_t aperture_node_count(const BeamlineGeometry& geom, double k, double source_reach,
                                       double screen_reach, double max_phase_step) {
    const double grad = k * ((geom.s2_width / 2.0 + source_reach) / geom.drift_l1 +
                             (geom.s2_width / 2.0 + screen_reach) / geom.drift_l2);
    const double needed = geom.s2_width * grad / max_phase_step;
    if (needed > 1e8)
        throw ResourceError("Fresnel quadrature would need " + std::to_string(needed) +
                            " aperture nodes; relax max_phase_step or narrow the screen window");
    return std::max<std::size_t>(33, static_cast<std::size_t>(std::ceil(needed)) + 1);
}

// |psi(x)|^2 for one point source, evaluated on an explicit list of screen
// positions. psi is the paraxial two-segment Fresnel integral over the
// aperture; the x^2/(2 L2) and source-side constant phases drop in the modulus.
// The oscillatory screen factor exp(-i k x xi / L2) advances along the aperture
// by a constant complex rotation per node, so the inner loop is a multiply-add.
inline std::vector<double> point_source_intensity_at(
    const BeamlineGeometry& geom, double wavelength, double source_x,
    const std::vector<double>& screen_x, double screen_reach, double max_phase_step) {
    const double k = 2.0 * constants::pi / wavelength;
    const std::size_t n =
        aperture_node_count(geom, k, std::abs(source_x), screen_reach, max_phase_step);
    const double xi0 = -geom.s2_width / 2.0;
    const double dxi = geom.s2_width / static_cast<double>(n - 1);

    // aperture factor: quadratic phases that do not involve x, with trapezoid weights
    std::vector<std::complex<double>> aperture(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = xi0 + dxi * static_cast<double>(i);
        const double phase = k * ((xi - source_x) * (xi - source_x) / (2.0 * geom.drift_l1) +
                                  xi * xi / (2.0 * geom.drift_l2));
        const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        aperture[i] = std::polar(w, phase);
    }

    std::vector<double> out(screen_x.size());
    for (std::size_t j = 0; j < screen_x.size(); ++j) {
        const double fx = -k * screen_x[j] / geom.drift_l2;
        const std::complex<double> rot = std::polar(1.0, fx * dxi);
        std::complex<double> phase = std::polar(1.0, fx * xi0);
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) {
            acc += aperture[i] * phase;
            phase *= rot;
        }
        acc *= dxi;
        out[j] = std::norm(acc);
    }
    return out;
}

}  // namespace detail

// Diffraction pattern of a single monochromatic point source on S1.
inline Profile fresnel_point_source_intensity(const BeamlineGeometry& geom, double wavelength,
                                              double source_x,
                                              const PropagationSettings& settings) {
    geom.validate();
    settings.validate();
    if (!(wavelength > 0.0)) throw DomainError("wavelength must be positive");
    if (std::abs(source_x) > geom.s1_width / 2.0)
        throw DomainError("source_x outside the S1 aperture");

    const ScreenGrid grid = resolve_screen_grid(geom, wavelength, settings);
    std::vector<double> xs(grid.points);
    for (std::size_t j = 0; j < grid.points; ++j) xs[j] = grid.x(j);
    auto values = detail::point_source_intensity_at(geom, wavelength, source_x, xs,
                                                    grid.halfwidth, settings.max_phase_step);
    return Profile(-grid.halfwidth, grid.pitch(), std::move(values));
}

namespace detail {

// Unnormalized incoherent sum; integrated intensity equals s2_width (one count
// per transmitted molecule, transmission proportional to the slit opening).
//
// A point source at x_s produces the axial pattern rigidly shifted by
// -x_s L2 / L1 (the reduced coordinate x_s/L1 + x/L2 is all the aperture
// integral sees), so each monochromatic component is computed once on an
// extended grid and the source average becomes a sum of shifted copies.
inline Profile incoherent_beam_profile_unnormalized(const BeamlineGeometry& geom,
                                                    const ThermalBeam& beam,
                                                    const PropagationSettings& settings) {
    geom.validate();
    beam.validate();
    settings.validate();

    const double mean_wavelength = de_broglie_wavelength(beam.particle, beam.mean_velocity);
    const ScreenGrid grid = resolve_screen_grid(geom, mean_wavelength, settings);
    const double pitch = grid.pitch();

    const std::size_t n_src = settings.n_source_points;
    const double shift_max =
        n_src > 1 ? (geom.s1_width / 2.0) * (geom.drift_l2 / geom.drift_l1) : 0.0;
    const std::size_t pad =
        shift_max > 0.0 ? static_cast<std::size_t>(std::ceil(shift_max / pitch)) + 2 : 0;
    const std::size_t n_ext = grid.points + 2 * pad;
    const double x0_ext = -grid.halfwidth - pitch * static_cast<double>(pad);

    std::vector<double> ext_x(n_ext);
    for (std::size_t j = 0; j < n_ext; ++j) ext_x[j] = x0_ext + pitch * static_cast<double>(j);
    const double ext_reach = std::max(std::abs(ext_x.front()), std::abs(ext_x.back()));

    const auto velocities = discretize_velocities(beam, settings.n_velocity_samples);

    std::vector<double> total(grid.points, 0.0);
    for (const auto& sample : velocities) {
        const double lambda = de_broglie_wavelength(beam.particle, sample.velocity);
        auto component = detail::point_source_intensity_at(geom, lambda, 0.0, ext_x, ext_reach,
                                                           settings.max_phase_step);
        double area = 0.5 * (component.front() + component.back());
        for (std::size_t j = 1; j + 1 < component.size(); ++j) area += component[j];
        area *= pitch;
        const double scale = sample.weight * geom.s2_width / (area * static_cast<double>(n_src));

        Profile ext(x0_ext, pitch, std::move(component));
        for (std::size_t q = 0; q < n_src; ++q) {
            const double src = n_src > 1 ? -geom.s1_width / 2.0 + geom.s1_width *
                                                                       static_cast<double>(q) /
                                                                       static_cast<double>(n_src - 1)
                                         : 0.0;
            const double shift = src * geom.drift_l2 / geom.drift_l1;
            for (std::size_t j = 0; j < grid.points; ++j)
                total[j] += scale * ext.value_at(grid.x(j) + shift);
        }
    }

    return Profile(-grid.halfwidth, pitch, std::move(total));
}

}  // namespace detail

// Detector-plane intensity of the full beam: incoherent average over the S1
// extent and over the velocity distribution, normalized to unit peak.
inline Profile incoherent_beam_profile(const BeamlineGeometry& geom, const ThermalBeam& beam,
                                       const PropagationSettings& settings) {
    Profile result = detail::incoherent_beam_profile_unnormalized(geom, beam, settings);
    result.normalize_peak();
    return result;
}

// Analytic far-field pattern I = (sin u / u)^2, u = s2 k theta / 2, theta = x / L2,
// unit peak at the axis.
inline Profile far_field_sinc(const BeamlineGeometry& geom, double wavelength,
                              const ScreenGrid& grid) {
    geom.validate();
    if (!(wavelength > 0.0)) throw DomainError("wavelength must be positive");
    const double k = 2.0 * constants::pi / wavelength;
    std::vector<double> values(grid.points);
    for (std::size_t j = 0; j < grid.points; ++j) {
        const double u = geom.s2_width * k * (grid.x(j) / geom.drift_l2) / 2.0;
        if (u == 0.0) {
            values[j] = 1.0;
        } else {
            const double s = std::sin(u) / u;
            values[j] = s * s;
        }
    }
    return Profile(-grid.halfwidth, grid.pitch(), std::move(values));
}

}  // namespace slitwave
