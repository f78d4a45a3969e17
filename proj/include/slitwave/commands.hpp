#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "slitwave/analysis.hpp"
#include "slitwave/classical.hpp"
#include "slitwave/config.hpp"
#include "slitwave/constants.hpp"
#include "slitwave/csv.hpp"
#include "slitwave/detector.hpp"
#include "slitwave/errors.hpp"
#include "slitwave/fresnel.hpp"
#include "slitwave/scan.hpp"
#include "slitwave/svg.hpp"

namespace slitwave {

enum class ProfileModel { wave, classical };

namespace detail {

inline std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open output file '" + path + "'");
    return out;
}

inline std::string svg_path(const std::string& csv_path) {
    const auto dot = csv_path.rfind('.');
    return (dot == std::string::npos ? csv_path : csv_path.substr(0, dot)) + ".svg";
}

}  // namespace detail

// profile: one detector-plane curve at the configured slit width.
inline Profile compute_profile(const RunConfig& config, ProfileModel model) {
    config.validate();
    Profile profile;
    if (model == ProfileModel::wave) {
        profile = incoherent_beam_profile(config.geometry, config.beam, config.propagation);
    } else {
        const double lambda =
            de_broglie_wavelength(config.beam.particle, config.beam.mean_velocity);
        const ScreenGrid grid = resolve_screen_grid(config.geometry, lambda, config.propagation);
        profile = classical_profile(config.geometry, grid);
    }
    if (config.detector_enabled) profile = convolve_detector(profile, config.detector);
    if (config.noise_enabled)
        profile = add_counting_noise(profile, config.noise_counts, config.noise_seed);
    profile.normalize_peak();
    return profile;
}

inline int cmd_profile(const RunConfig& config, ProfileModel model, const std::string& out_path,
                       bool emit_svg) {
    const Profile profile = compute_profile(config, model);
    auto out = detail::open_output(out_path);
    csv::write_profile(out, profile, config.provenance());
    if (emit_svg) {
        svg::Series s;
        for (std::size_t i = 0; i < profile.size(); ++i) {
            s.x.push_back(profile.x(i) * 1e6);
            s.y.push_back(profile.intensity[i]);
        }
        auto plot = detail::open_output(detail::svg_path(out_path));
        svg::write_plot(plot, {s}, "x [um]", "intensity [peak-normalized]");
    }
    return 0;
}

// scan: wave and classical FWHM curves over the configured slit-width range.
inline int cmd_scan(const RunConfig& config, const std::string& out_path, bool emit_svg) {
    config.validate();
    const auto rows = run_scan(config.scan, config.geometry, config.beam, config.detector,
                               config.propagation, config.workers);
    auto out = detail::open_output(out_path);
    csv::write_scan(out, rows, config.provenance());
    if (emit_svg) {
        svg::Series wave{{}, {}, "#1f6fb4", false}, cls{{}, {}, "#c44e52", false};
        for (const auto& r : rows) {
            if (!r.error.empty()) continue;
            wave.x.push_back(r.slit_width * 1e6);
            wave.y.push_back(r.fwhm_wave_detected * 1e6);
            cls.x.push_back(r.slit_width * 1e6);
            cls.y.push_back(r.fwhm_classical_detected * 1e6);
        }
        auto plot = detail::open_output(detail::svg_path(out_path));
        svg::write_plot(plot, {wave, cls}, "slit width [um]", "detected FWHM [um]", true, false);
    }
    return 0;
}

// uncertainty: simulated scan (or ingested width CSV) through the momentum
// extraction, with the h / dx expectation as overlay.
inline int cmd_uncertainty(const RunConfig& config, const std::optional<std::string>& widths_csv,
                           const std::string& out_path, bool emit_svg) {
    config.validate();
    std::vector<MeasuredWidth> widths;
    if (widths_csv) {
        widths = csv::read_measured_widths(*widths_csv);
    } else {
        const auto rows = run_scan(config.scan, config.geometry, config.beam, config.detector,
                                   config.propagation, config.workers);
        for (const auto& r : rows) {
            if (!r.error.empty()) continue;
            widths.push_back(MeasuredWidth{r.slit_width, r.fwhm_wave_detected,
                                           r.fwhm_wave_detected_unc});
        }
    }
    const DetectorResponse det =
        config.detector_enabled ? config.detector : DetectorResponse{0.0, 0.0};
    const auto points = uncertainty_curve(widths, config.beam, config.geometry, det);

    std::size_t usable = 0;
    for (const auto& p : points)
        if (p.flag == RegimeFlag::ok) ++usable;

    auto out = detail::open_output(out_path);
    csv::write_uncertainty(out, points, config.provenance());
    if (usable == 0)
        std::cerr << "warning: no scan point lies in the far-field quantum regime\n";

    if (emit_svg && usable > 0) {
        svg::Series data{{}, {}, "#1f6fb4", true}, expectation{{}, {}, "#c44e52", false};
        double dx_min = 1e300, dx_max = 0.0;
        for (const auto& p : points) {
            if (p.flag != RegimeFlag::ok) continue;
            data.x.push_back(p.slit_width * 1e6);
            data.y.push_back(p.dp);
            dx_min = std::min(dx_min, p.slit_width);
            dx_max = std::max(dx_max, p.slit_width);
        }
        for (int i = 0; i <= 200; ++i) {
            const double dx = dx_min * std::pow(dx_max / dx_min, i / 200.0);
            expectation.x.push_back(dx * 1e6);
            expectation.y.push_back(theoretical_dp(dx));
        }
        auto plot = detail::open_output(detail::svg_path(out_path));
        svg::write_plot(plot, {expectation, data}, "slit width [um]", "dp [kg m/s]", true, true);
    }
    return 0;
}

// ingest: resample an external two-column profile onto a uniform grid.
inline int cmd_ingest(const std::string& in_path, const std::string& out_path,
                      const RunConfig& config) {
    const Profile profile = csv::read_profile(in_path);
    auto out = detail::open_output(out_path);
    csv::write_profile(out, profile, config.provenance());
    return 0;
}

}  // namespace slitwave
