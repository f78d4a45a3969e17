#pragma once

#include <atomic>
#include <cmath>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "slitwave/analysis.hpp"
#include "slitwave/classical.hpp"
#include "slitwave/detector.hpp"
#include "slitwave/errors.hpp"
#include "slitwave/fresnel.hpp"
#include "slitwave/fwhm.hpp"

namespace slitwave {

enum class ScanSpacing { linear, logarithmic };

struct ScanSpec {
    double min_slit;  // m
    double max_slit;  // m
    std::size_t points;
    ScanSpacing spacing = ScanSpacing::logarithmic;

    void validate() const {
        if (!(min_slit > 0.0) || !(max_slit > 0.0)) throw DomainError("scan bounds must be positive");
        if (points < 1) throw DomainError("scan needs at least one point");
        if (points > 1 && !(min_slit < max_slit))
            throw DomainError("scan minimum must be below the maximum");
    }

    std::vector<double> slit_widths() const {
        validate();
        std::vector<double> widths(points);
        if (points == 1) {
            widths[0] = min_slit;
            return widths;
        }
        for (std::size_t i = 0; i < points; ++i) {
            const double t = static_cast<double>(i) / static_cast<double>(points - 1);
            widths[i] = spacing == ScanSpacing::logarithmic
                            ? min_slit * std::pow(max_slit / min_slit, t)
                            : min_slit + (max_slit - min_slit) * t;
        }
        return widths;
    }
};

// The slit width below which detected profiles lose the trapezoidal plateau and
// a Gaussian fit reads the width more robustly than direct crossings.
inline constexpr double kFitMethodThreshold = 4e-6;  // m

struct ScanRow {
    double slit_width;                // m
    double fwhm_wave = 0.0;           // m, molecular profile (no detector)
    double fwhm_classical = 0.0;      // m
    double fwhm_wave_detected = 0.0;  // m
    double fwhm_classical_detected = 0.0;  // m
    double fwhm_wave_detected_unc = 0.0;   // m, from the fit when used
    std::string error;  // empty on success
};

namespace detail {

inline FwhmResult measure_width(const Profile& profile, double slit_width) {
    return slit_width < kFitMethodThreshold ? fwhm_gaussian_fit(profile) : fwhm_crossing(profile);
}

}  // namespace detail

// One scan point: wave and classical profiles, bare and detector-convolved.
inline ScanRow evaluate_scan_point(double slit_width, const BeamlineGeometry& base_geometry,
                                   const ThermalBeam& beam, const DetectorResponse& det,
                                   const PropagationSettings& settings) {
    ScanRow row;
    row.slit_width = slit_width;
    try {
        const BeamlineGeometry geom = base_geometry.with_slit(slit_width);
        const Profile wave = incoherent_beam_profile(geom, beam, settings);
        const ScreenGrid grid{wave.x0 < 0 ? -wave.x0 : wave.x0, wave.size()};
        const Profile classical = classical_profile(geom, grid);

        row.fwhm_wave = detail::measure_width(wave, slit_width).fwhm;
        row.fwhm_classical = fwhm_crossing(classical).fwhm;

        const FwhmResult wave_det = detail::measure_width(convolve_detector(wave, det), slit_width);
        row.fwhm_wave_detected = wave_det.fwhm;
        row.fwhm_wave_detected_unc =
            wave_det.method == FwhmMethod::gaussian_fit ? wave_det.uncertainty : wave.dx_grid;
        row.fwhm_classical_detected = fwhm_crossing(convolve_detector(classical, det)).fwhm;
    } catch (const Error& e) {
        row.error = e.what();
    }
    return row;
}

// Evaluates all slit widths with a bounded worker pool. Rows are written into
// their own slots, so the result is independent of the worker count.
inline std::vector<ScanRow> run_scan(const ScanSpec& spec, const BeamlineGeometry& geom,
                                     const ThermalBeam& beam, const DetectorResponse& det,
                                     const PropagationSettings& settings, std::size_t workers = 1) {
    const auto widths = spec.slit_widths();
    std::vector<ScanRow> rows(widths.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < widths.size(); ++i)
            rows[i] = evaluate_scan_point(widths[i], geom, beam, det, settings);
        return rows;
    }

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next.fetch_add(1); i < widths.size(); i = next.fetch_add(1))
            rows[i] = evaluate_scan_point(widths[i], geom, beam, det, settings);
    };
    std::vector<std::thread> pool;
    const std::size_t count = std::min(workers, widths.size());
    pool.reserve(count);
    for (std::size_t w = 0; w < count; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    return rows;
}

}  // namespace slitwave
