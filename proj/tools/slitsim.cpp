// slitsim: far-field single-slit diffraction of heavy molecules and the
// position-momentum uncertainty product, from the command line.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "slitwave/commands.hpp"

namespace {

struct KeyValueOverrides {
    std::vector<std::pair<std::string, std::string>> entries;
};

void apply_overrides(slitwave::RunConfig& config, const KeyValueOverrides& overrides) {
    for (const auto& [key, value] : overrides.entries) config.set(key, value);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"single-slit matter-wave diffraction simulator and analysis toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path = "out.csv";
    bool emit_svg = false;
    std::size_t workers = 0;
    std::optional<std::uint64_t> seed;
    KeyValueOverrides overrides;

    app.add_option("--config", config_path, "key = value config file");
    app.add_option("--out", out_path, "output CSV path");
    app.add_flag("--svg", emit_svg, "also write an SVG line plot next to the CSV");
    app.add_option("--workers", workers, "worker thread count for scans");
    app.add_option("--seed", seed, "noise seed");
    std::vector<std::string> set_args;
    app.add_option("--set", set_args, "override a config key, e.g. --set dx=1.4um")
        ->type_size(1)
        ->allow_extra_args(false);

    auto* profile_cmd = app.add_subcommand("profile", "detector-plane beam profile at one slit width");
    profile_cmd->fallthrough();
    std::string slit_width_text, model_text = "wave", detector_text = "on";
    profile_cmd->add_option("--dx", slit_width_text, "slit width, e.g. 1.4um");
    profile_cmd->add_option("--model", model_text, "wave | classical");
    profile_cmd->add_option("--detector", detector_text, "on | off");

    auto* scan_cmd = app.add_subcommand("scan", "FWHM curves over a slit-width scan");
    scan_cmd->fallthrough();
    auto* uncertainty_cmd =
        app.add_subcommand("uncertainty", "momentum extraction and uncertainty product");
    uncertainty_cmd->fallthrough();
    std::string widths_csv;
    uncertainty_cmd->add_option("--widths-csv", widths_csv,
                                "analyze measured widths (dx_um, fwhm_um[, fwhm_err_um]) "
                                "instead of simulating");

    auto* ingest_cmd = app.add_subcommand("ingest", "resample an external profile CSV");
    ingest_cmd->fallthrough();
    std::string ingest_path;
    ingest_cmd->add_option("input", ingest_path, "two-column profile CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        for (const auto& v : set_args) {
            const auto eq = v.find('=');
            if (eq == std::string::npos)
                throw slitwave::ConfigError("--set expects key=value, got '" + v + "'");
            overrides.entries.emplace_back(v.substr(0, eq), v.substr(eq + 1));
        }
        slitwave::RunConfig config;
        if (!config_path.empty()) config = slitwave::load_config(config_path);
        apply_overrides(config, overrides);
        if (workers > 0) config.workers = workers;
        if (seed) config.noise_seed = *seed;

        if (profile_cmd->parsed()) {
            if (!slit_width_text.empty()) config.set("dx", slit_width_text);
            config.set("detector", detector_text);
            slitwave::ProfileModel model;
            if (model_text == "wave") model = slitwave::ProfileModel::wave;
            else if (model_text == "classical") model = slitwave::ProfileModel::classical;
            else throw slitwave::ConfigError("--model must be 'wave' or 'classical'");
            return slitwave::cmd_profile(config, model, out_path, emit_svg);
        }
        if (scan_cmd->parsed()) return slitwave::cmd_scan(config, out_path, emit_svg);
        if (uncertainty_cmd->parsed()) {
            std::optional<std::string> widths =
                widths_csv.empty() ? std::nullopt : std::optional<std::string>(widths_csv);
            return slitwave::cmd_uncertainty(config, widths, out_path, emit_svg);
        }
        if (ingest_cmd->parsed())
            return slitwave::cmd_ingest(ingest_path, out_path, config);
    } catch (const slitwave::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
