#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "slitwave/errors.hpp"

namespace slitwave {

// Sampled 1-D intensity distribution on a uniform transverse grid.
struct Profile {
    double x0 = 0.0;       // m, position of the first sample
    double dx_grid = 0.0;  // m, grid pitch
    std::vector<double> intensity;

    Profile() = default;
    Profile(double x0_, double pitch, std::vector<double> values)
        : x0(x0_), dx_grid(pitch), intensity(std::move(values)) {
        validate();
    }

    void validate() const {
        if (!(dx_grid > 0.0)) throw DomainError("profile grid pitch must be positive");
        if (intensity.size() < 8) throw DomainError("profile needs at least 8 samples");
        for (double v : intensity)
            if (!(v >= 0.0)) throw DomainError("profile intensity must be nonnegative");
    }

    std::size_t size() const { return intensity.size(); }
    double x(std::size_t i) const { return x0 + dx_grid * static_cast<double>(i); }

    std::size_t peak_index() const {
        return static_cast<std::size_t>(
            std::max_element(intensity.begin(), intensity.end()) - intensity.begin());
    }
    double peak() const { return intensity[peak_index()]; }

    // Trapezoid integral over the grid.
    double integral() const {
        double s = 0.5 * (intensity.front() + intensity.back());
        for (std::size_t i = 1; i + 1 < intensity.size(); ++i) s += intensity[i];
        return s * dx_grid;
    }

    double centroid() const {
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < intensity.size(); ++i) {
            num += x(i) * intensity[i];
            den += intensity[i];
        }
        return num / den;
    }

    // Linear interpolation; zero outside the grid.
    double value_at(double pos) const {
        const double t = (pos - x0) / dx_grid;
        if (t < 0.0 || t > static_cast<double>(intensity.size() - 1)) return 0.0;
        const auto i = static_cast<std::size_t>(t);
        if (i + 1 >= intensity.size()) return intensity.back();
        const double f = t - static_cast<double>(i);
        return intensity[i] * (1.0 - f) + intensity[i + 1] * f;
    }

    void normalize_peak() {
        const double p = peak();
        if (p > 0.0)
            for (double& v : intensity) v /= p;
    }
};

// Symmetric screen grid: n points spanning [-halfwidth, +halfwidth].
struct ScreenGrid {
    double halfwidth;    // m
    std::size_t points;

    double pitch() const { return 2.0 * halfwidth / static_cast<double>(points - 1); }
    double x(std::size_t i) const { return -halfwidth + pitch() * static_cast<double>(i); }
};

}  // namespace slitwave
