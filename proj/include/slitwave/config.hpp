#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "slitwave/beam.hpp"
#include "slitwave/detector.hpp"
#include "slitwave/errors.hpp"
#include "slitwave/fresnel.hpp"
#include "slitwave/geometry.hpp"
#include "slitwave/scan.hpp"
#include "slitwave/units.hpp"

namespace slitwave {

// Flat key = value configuration with unit-suffixed values. Defaults encode the
// published setup; every key can be overridden by a same-named CLI flag.
struct RunConfig {
    BeamlineGeometry geometry = reference_geometry();
    ThermalBeam beam = reference_beam();
    DetectorResponse detector = reference_detector();
    bool detector_enabled = true;
    PropagationSettings propagation{};
    ScanSpec scan{70e-9, 20e-6, 40, ScanSpacing::logarithmic};
    std::size_t workers = 1;
    bool noise_enabled = false;
    std::uint64_t noise_counts = 10000;
    std::uint64_t noise_seed = 1;

    void validate() const {
        geometry.validate();
        beam.validate();
        detector.validate();
        propagation.validate();
        scan.validate();
        if (workers < 1) throw ConfigError("workers must be >= 1");
    }

    void set(const std::string& key, const std::string& value) {
        using namespace units;
        if (key == "S1") geometry.s1_width = parse_length(value);
        else if (key == "dx") geometry.s2_width = parse_length(value);
        else if (key == "L1") geometry.drift_l1 = parse_length(value);
        else if (key == "L2") geometry.drift_l2 = parse_length(value);
        else if (key == "mass") beam.particle.mass_amu = parse_mass(value);
        else if (key == "particle") beam.particle.name = value;
        else if (key == "temperature") {
            beam.temperature = parse_temperature(value);
            beam.mean_velocity = effusive_peak_velocity(beam.particle, beam.temperature);
        } else if (key == "mean_velocity") beam.mean_velocity = parse_speed(value);
        else if (key == "velocity_spread") beam.relative_fwhm_spread = parse_number(value);
        else if (key == "velocity_distribution") {
            if (value == "gaussian") beam.distribution_kind = VelocityDistribution::gaussian_in_v;
            else if (value == "effusive") beam.distribution_kind = VelocityDistribution::effusive_flux;
            else throw ConfigError("velocity_distribution must be 'gaussian' or 'effusive'");
        } else if (key == "detector_fwhm") detector.fwhm = parse_length(value);
        else if (key == "detector_broadening") detector.broadening = parse_length(value);
        else if (key == "detector") detector_enabled = parse_switch(value);
        else if (key == "source_points") propagation.n_source_points = parse_count(value);
        else if (key == "velocity_samples") propagation.n_velocity_samples = parse_count(value);
        else if (key == "screen_halfwidth") propagation.screen_halfwidth = parse_length(value);
        else if (key == "screen_points") propagation.screen_points = parse_count(value);
        else if (key == "max_phase_step") propagation.max_phase_step = parse_angle(value);
        else if (key == "scan_min") scan.min_slit = parse_length(value);
        else if (key == "scan_max") scan.max_slit = parse_length(value);
        else if (key == "scan_points") scan.points = parse_count(value);
        else if (key == "scan_spacing") {
            if (value == "log") scan.spacing = ScanSpacing::logarithmic;
            else if (value == "linear") scan.spacing = ScanSpacing::linear;
            else throw ConfigError("scan_spacing must be 'log' or 'linear'");
        } else if (key == "workers") workers = parse_count(value);
        else if (key == "noise") noise_enabled = parse_switch(value);
        else if (key == "noise_counts") noise_counts = parse_count(value);
        else if (key == "noise_seed") noise_seed = parse_count(value);
        else throw ConfigError("unknown config key '" + key + "'");
    }

    // One provenance line per key; embedded in output CSV headers so every file
    // records the configuration that produced it.
    std::string provenance() const {
        std::ostringstream os;
        os.precision(12);
        os << "# S1 = " << geometry.s1_width * 1e6 << " um\n"
           << "# dx = " << geometry.s2_width * 1e6 << " um\n"
           << "# L1 = " << geometry.drift_l1 * 1e2 << " cm\n"
           << "# L2 = " << geometry.drift_l2 * 1e2 << " cm\n"
           << "# particle = " << beam.particle.name << "\n"
           << "# mass = " << beam.particle.mass_amu << " amu\n"
           << "# temperature = " << beam.temperature << " K\n"
           << "# mean_velocity = " << beam.mean_velocity << " m/s\n"
           << "# velocity_spread = " << beam.relative_fwhm_spread << "\n"
           << "# velocity_distribution = "
           << (beam.distribution_kind == VelocityDistribution::gaussian_in_v ? "gaussian"
                                                                             : "effusive")
           << "\n"
           << "# detector = " << (detector_enabled ? "on" : "off") << "\n"
           << "# detector_fwhm = " << detector.fwhm * 1e6 << " um\n"
           << "# detector_broadening = " << detector.broadening * 1e6 << " um"
           << " (detector line shape assumed gaussian)\n"
           << "# source_points = " << propagation.n_source_points << "\n"
           << "# velocity_samples = " << propagation.n_velocity_samples << "\n"
           << "# screen_points = " << propagation.screen_points << "\n";
        return os.str();
    }

  private:
    static bool parse_switch(const std::string& value) {
        if (value == "on" || value == "true" || value == "1") return true;
        if (value == "off" || value == "false" || value == "0") return false;
        throw ConfigError("expected on/off, got '" + value + "'");
    }
    static std::uint64_t parse_count(const std::string& value) {
        const double v = units::parse_number(value);
        if (v < 0 || v != std::floor(v)) throw ConfigError("expected a nonnegative integer");
        return static_cast<std::uint64_t>(v);
    }
};

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    RunConfig config;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        if (eq == std::string::npos) {
            if (!trim(line).empty())
                throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
            continue;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
        try {
            config.set(key, value);
        } catch (const ConfigError& e) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return config;
}

}  // namespace slitwave
