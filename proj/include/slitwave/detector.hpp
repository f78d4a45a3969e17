#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "slitwave/constants.hpp"
#include "slitwave/errors.hpp"
#include "slitwave/profile.hpp"

namespace slitwave {

// Scanning-detector resolution function. The line shape is not known from the
// measurement; a Gaussian is assumed and flagged as such in reports.
struct DetectorResponse {
    double fwhm;              // m, measured resolution
    double broadening = 0.0;  // m, additional broadening (residual tilt)

    double effective_fwhm() const { return fwhm + broadening; }

    void validate() const {
        if (!(fwhm > 0.0)) throw DomainError("detector fwhm must be positive");
        if (!(broadening >= 0.0)) throw DomainError("detector broadening must be nonnegative");
    }
};

// The published detector: 10 um resolution plus 3.5 um tilt broadening.
inline DetectorResponse reference_detector() { return DetectorResponse{10e-6, 3.5e-6}; }

// f_exp = D (x) M: discrete convolution with a unit-area Gaussian kernel on the
// profile's own grid. The profile is zero-padded by 4 kernel FWHM implicitly
// (samples outside the grid contribute zero).
inline Profile convolve_detector(const Profile& profile, const DetectorResponse& det) {
    profile.validate();
    det.validate();
    const double eff = det.effective_fwhm();
    if (eff < 3.0 * profile.dx_grid)
        throw PreconditionError(
            "detector kernel under-resolved on this grid; use a finer screen grid");

    const double sigma = eff / constants::gaussian_fwhm_per_sigma;
    const auto radius = static_cast<std::ptrdiff_t>(std::ceil(4.0 * eff / profile.dx_grid));
    std::vector<double> kernel(2 * radius + 1);
    double sum = 0.0;
    for (std::ptrdiff_t j = -radius; j <= radius; ++j) {
        const double u = static_cast<double>(j) * profile.dx_grid / sigma;
        kernel[static_cast<std::size_t>(j + radius)] = std::exp(-0.5 * u * u);
        sum += kernel[static_cast<std::size_t>(j + radius)];
    }
    for (double& k : kernel) k /= sum;

    const auto n = static_cast<std::ptrdiff_t>(profile.size());
    std::vector<double> out(profile.size(), 0.0);
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        double acc = 0.0;
        const std::ptrdiff_t jlo = std::max<std::ptrdiff_t>(-radius, i - n + 1);
        const std::ptrdiff_t jhi = std::min<std::ptrdiff_t>(radius, i);
        for (std::ptrdiff_t j = jlo; j <= jhi; ++j)
            acc += kernel[static_cast<std::size_t>(j + radius)] *
                   profile.intensity[static_cast<std::size_t>(i - j)];
        out[static_cast<std::size_t>(i)] = acc;
    }
    return Profile(profile.x0, profile.dx_grid, std::move(out));
}

// Per-bin Poisson counts with total expectation total_counts; deterministic
// for a fixed seed.
inline Profile add_counting_noise(const Profile& profile, std::uint64_t total_counts,
                                  std::uint64_t seed) {
    profile.validate();
    if (total_counts < 1) throw DomainError("add_counting_noise: need at least one count");

    double sum = 0.0;
    for (double v : profile.intensity) sum += v;
    std::mt19937_64 rng(seed);
    std::vector<double> out(profile.size());
    for (std::size_t i = 0; i < profile.size(); ++i) {
        const double mean = static_cast<double>(total_counts) * profile.intensity[i] / sum;
        std::poisson_distribution<long> dist(mean);
        out[i] = mean > 0.0 ? static_cast<double>(dist(rng)) : 0.0;
    }
    return Profile(profile.x0, profile.dx_grid, std::move(out));
}

}  // namespace slitwave
