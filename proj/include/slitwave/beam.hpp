#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "slitwave/constants.hpp"
#include "slitwave/errors.hpp"

namespace slitwave {

struct Particle {
    double mass_amu;
    std::string name;

    double mass_kg() const { return mass_amu * constants::atomic_mass_unit; }

    void validate() const {
        if (!(mass_amu > 0.0)) throw DomainError("particle mass must be positive");
    }
};

inline Particle c70() { return Particle{840.0, "C70"}; }

enum class VelocityDistribution {
    gaussian_in_v,  // Gaussian speed density, FWHM = relative_fwhm_spread * mean
    effusive_flux,  // flux-weighted effusive density ~ v^3 exp(-m v^2 / 2 k_B T)
};

struct ThermalBeam {
    Particle particle;
    double temperature;           // K
    double mean_velocity;         // m/s
    double relative_fwhm_spread;  // Delta v / v (FWHM)
    VelocityDistribution distribution_kind = VelocityDistribution::gaussian_in_v;

    void validate() const {
        particle.validate();
        if (!(temperature > 0.0)) throw DomainError("beam temperature must be positive");
        if (!(mean_velocity > 0.0)) throw DomainError("mean velocity must be positive");
        if (!(relative_fwhm_spread > 0.0 && relative_fwhm_spread < 2.0))
            throw DomainError("relative velocity spread must lie in (0, 2)");
    }
};

struct VelocitySample {
    double velocity;  // m/s
    double weight;    // normalized, sums to 1 over a sample set
};

// Most probable speed of the flux-weighted effusive distribution,
// the maximum of v^3 exp(-m v^2 / 2 k_B T): sqrt(3 k_B T / m).
inline double effusive_peak_velocity(const Particle& particle, double temperature) {
    return std::sqrt(3.0 * constants::boltzmann * temperature / particle.mass_kg());
}

// lambda = h / (m v)
inline double de_broglie_wavelength(const Particle& particle, double velocity) {
    particle.validate();
    if (!(velocity > 0.0)) throw DomainError("de_broglie_wavelength: velocity must be positive");
    return constants::planck / (particle.mass_kg() * velocity);
}

// p_z = m v
inline double longitudinal_momentum(const Particle& particle, double velocity) {
    particle.validate();
    if (!(velocity > 0.0)) throw DomainError("longitudinal_momentum: velocity must be positive");
    return particle.mass_kg() * velocity;
}

// The default beam of the experiment: C70 at 900 K, Delta v / v = 0.6 (FWHM),
// mean velocity at the effusive flux peak.
inline ThermalBeam reference_beam() {
    Particle p = c70();
    double v = effusive_peak_velocity(p, 900.0);
    return ThermalBeam{p, 900.0, v, 0.6, VelocityDistribution::gaussian_in_v};
}

// Deterministic velocity grid for polychromatic averaging: equally spaced nodes
// with trapezoid end weights over the clipped support
// [v (1 - 1.5 spread), v (1 + 1.5 spread)], weighted by the beam's speed density.
inline std::vector<VelocitySample> discretize_velocities(const ThermalBeam& beam, std::size_t n) {
    beam.validate();
    if (n == 0) throw DomainError("discretize_velocities: need at least one sample");
    if (n == 1) return {VelocitySample{beam.mean_velocity, 1.0}};

    const double vbar = beam.mean_velocity;
    const double lo = std::max(vbar * (1.0 - 1.5 * beam.relative_fwhm_spread), 1e-9 * vbar);
    const double hi = vbar * (1.0 + 1.5 * beam.relative_fwhm_spread);
    const double step = (hi - lo) / static_cast<double>(n - 1);

    std::vector<VelocitySample> samples(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = lo + step * static_cast<double>(i);
        double density;
        if (beam.distribution_kind == VelocityDistribution::gaussian_in_v) {
            const double sigma = beam.relative_fwhm_spread * vbar / constants::gaussian_fwhm_per_sigma;
            const double z = (v - vbar) / sigma;
            density = std::exp(-0.5 * z * z);
        } else {
            const double a = beam.particle.mass_kg() / (2.0 * constants::boltzmann * beam.temperature);
            // scale out the peak to keep the exponent tame
            density = (v * v * v) * std::exp(-a * v * v) /
                      ((vbar * vbar * vbar) * std::exp(-a * vbar * vbar));
        }
        const double trap = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        samples[i] = VelocitySample{v, density * trap};
        total += samples[i].weight;
    }
    for (auto& s : samples) s.weight /= total;
    return samples;
}

}  // namespace slitwave
