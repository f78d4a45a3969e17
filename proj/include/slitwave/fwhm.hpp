#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "slitwave/constants.hpp"
#include "slitwave/errors.hpp"
#include "slitwave/profile.hpp"

namespace slitwave {

enum class FwhmMethod { crossing, gaussian_fit };

struct FwhmResult {
    double fwhm;         // m
    FwhmMethod method;
    double fit_rms = 0.0;      // residual RMS relative to the fitted amplitude
    double uncertainty = 0.0;  // m, 1-sigma width uncertainty
};

// FWHM from linear interpolation of the outermost half-maximum crossings
// around the global peak.
inline FwhmResult fwhm_crossing(const Profile& profile) {
    profile.validate();
    const std::size_t ip = profile.peak_index();
    const double half = 0.5 * profile.peak();

    // outermost crossings: walk inward from each end to the first sample >= half
    std::size_t left = 0;
    while (left < profile.size() && profile.intensity[left] < half) ++left;
    std::size_t right = profile.size();
    while (right > 0 && profile.intensity[right - 1] < half) --right;
    --right;

    if (left == 0 || right + 1 >= profile.size() || left > ip || right < ip)
        throw ShapeError("profile does not decay below half maximum on both sides of the peak");

    auto interp = [&](std::size_t lo, std::size_t hi) {
        // crossing between samples lo (below half) and hi (above half) or vice versa
        const double y0 = profile.intensity[lo], y1 = profile.intensity[hi];
        const double t = (half - y0) / (y1 - y0);
        return profile.x(lo) + t * (profile.x(hi) - profile.x(lo));
    };
    const double xl = interp(left - 1, left);
    const double xr = interp(right + 1, right);
    return FwhmResult{xr - xl, FwhmMethod::crossing, 0.0, profile.dx_grid};
}

namespace detail {

// Solve the 4x4 normal equations in place; returns false when singular.
inline bool solve4(std::array<std::array<double, 4>, 4>& a, std::array<double, 4>& b) {
    for (int col = 0; col < 4; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (std::abs(a[pivot][col]) < 1e-300) return false;
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            const double f = a[r][col] / a[col][col];
            for (int c = col; c < 4; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    for (int i = 0; i < 4; ++i) b[i] /= a[i][i];
    return true;
}

}  // namespace detail

// Least-squares fit of a * exp(-(x - c)^2 / (2 s^2)) + o over the full profile
// (Levenberg-Marquardt). Returns FWHM = 2.3548 s, the residual RMS relative to
// the fitted amplitude, and a 1-sigma width uncertainty from the local
// curvature of the fit.
inline FwhmResult fwhm_gaussian_fit(const Profile& profile) {
    profile.validate();
    const double peak = profile.peak();
    std::size_t above = 0;
    for (double v : profile.intensity)
        if (v > 0.1 * peak) ++above;
    if (above < 8)
        throw PreconditionError("gaussian fit needs at least 8 points above 10% of peak");

    const std::size_t n = profile.size();
    double offset0 = *std::min_element(profile.intensity.begin(), profile.intensity.end());
    double sigma0;
    try {
        sigma0 = fwhm_crossing(profile).fwhm / constants::gaussian_fwhm_per_sigma;
    } catch (const ShapeError&) {
        sigma0 = 0.25 * profile.dx_grid * static_cast<double>(n);
    }
    std::array<double, 4> p{peak - offset0, profile.x(profile.peak_index()), sigma0, offset0};

    auto cost_of = [&](const std::array<double, 4>& q) {
        double c = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double z = (profile.x(i) - q[1]) / q[2];
            const double r = q[0] * std::exp(-0.5 * z * z) + q[3] - profile.intensity[i];
            c += r * r;
        }
        return c;
    };

    double lambda = 1e-3;
    double cost = cost_of(p);
    std::array<std::array<double, 4>, 4> jtj{};
    std::array<double, 4> jtr{};
    bool converged = false;

    for (int iter = 0; iter < 200 && !converged; ++iter) {
        for (auto& row : jtj) row.fill(0.0);
        jtr.fill(0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double z = (profile.x(i) - p[1]) / p[2];
            const double e = std::exp(-0.5 * z * z);
            const double r = p[0] * e + p[3] - profile.intensity[i];
            const std::array<double, 4> j{e, p[0] * e * z / p[2], p[0] * e * z * z / p[2], 1.0};
            for (int a = 0; a < 4; ++a) {
                jtr[a] += j[a] * r;
                for (int b = 0; b < 4; ++b) jtj[a][b] += j[a] * j[b];
            }
        }

        bool stepped = false;
        for (int tries = 0; tries < 30 && !stepped; ++tries) {
            auto lhs = jtj;
            for (int a = 0; a < 4; ++a) lhs[a][a] += lambda * jtj[a][a];
            std::array<double, 4> delta = jtr;
            for (double& d : delta) d = -d;
            if (!detail::solve4(lhs, delta)) {
                lambda *= 10.0;
                continue;
            }
            std::array<double, 4> trial{p[0] + delta[0], p[1] + delta[1], p[2] + delta[2],
                                        p[3] + delta[3]};
            if (trial[2] == 0.0) trial[2] = p[2];
            const double trial_cost = cost_of(trial);
            if (trial_cost <= cost) {
                const double rel = std::abs(cost - trial_cost) / std::max(cost, 1e-300);
                const double step = std::abs(delta[2]) / std::abs(trial[2]);
                p = trial;
                cost = trial_cost;
                lambda = std::max(lambda * 0.3, 1e-12);
                stepped = true;
                if (rel < 1e-14 || step < 1e-12) converged = true;
            } else {
                lambda *= 10.0;
            }
        }
        if (!stepped) converged = cost < 1e-28;  // stuck; accept only a machine-level fit
    }

    const double amplitude = std::abs(p[0]);
    const double rms = std::sqrt(cost / static_cast<double>(n)) / std::max(amplitude, 1e-300);
    if (!converged && rms > 0.2)
        throw FitError("gaussian fit did not converge (relative residual RMS " +
                       std::to_string(rms) + ")");

    // 1-sigma width uncertainty from the curvature: cov = inv(J^T J) * s^2
    double width_unc = 0.0;
    {
        auto lhs = jtj;
        std::array<double, 4> rhs{0.0, 0.0, 1.0, 0.0};  // third column of the inverse
        if (detail::solve4(lhs, rhs) && rhs[2] > 0.0 && n > 4) {
            const double variance = cost / static_cast<double>(n - 4);
            width_unc = constants::gaussian_fwhm_per_sigma * std::sqrt(rhs[2] * variance);
        }
    }
    return FwhmResult{constants::gaussian_fwhm_per_sigma * std::abs(p[2]),
                      FwhmMethod::gaussian_fit, rms, width_unc};
}

}  // namespace slitwave
