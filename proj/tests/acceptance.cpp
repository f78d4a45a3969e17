// End-to-end acceptance checks: one [PASS]/[FAIL] line per criterion.
// Exits 0 only when every criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "slitwave/analysis.hpp"
#include "slitwave/beam.hpp"
#include "slitwave/classical.hpp"
#include "slitwave/config.hpp"
#include "slitwave/csv.hpp"
#include "slitwave/detector.hpp"
#include "slitwave/fresnel.hpp"
#include "slitwave/fwhm.hpp"
#include "slitwave/scan.hpp"

using namespace slitwave;

namespace {

int failures = 0;

void report(int criterion, const std::string& label, bool pass, const std::string& detail) {
    std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << criterion << " (" << label
              << "): " << detail << "\n";
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// --- criterion 1: Fresnel propagator vs analytic sinc^2 in the far field ----

void criterion_1() {
    const double lambda = de_broglie_wavelength(c70(), reference_beam().mean_velocity);
    struct Case {
        double slit, drift_l2;
    };
    const std::vector<Case> cases{{0.1e-6, 1.33}, {0.2e-6, 1.33}, {0.3e-6, 1.33}, {0.2e-6, 0.8}};
    bool pass = true;
    std::ostringstream detail;
    for (const auto& c : cases) {
        BeamlineGeometry geom = reference_geometry(c.slit);
        geom.drift_l2 = c.drift_l2;
        const double fresnel_number = c.slit * c.slit / (lambda * geom.drift_l2);
        const auto t0 = std::chrono::steady_clock::now();
        Profile numeric = fresnel_point_source_intensity(geom, lambda, 0.0, {});
        const double elapsed = seconds_since(t0);
        numeric.normalize_peak();
        const Profile analytic = far_field_sinc(geom, lambda, ScreenGrid{-numeric.x0, numeric.size()});
        double max_dev = 0.0;
        for (std::size_t i = 0; i < numeric.size(); ++i)
            max_dev = std::max(max_dev, std::abs(numeric.intensity[i] - analytic.intensity[i]));
        pass = pass && max_dev < 0.01 && elapsed < 10.0;
        detail << " [N_F=" << fmt(fresnel_number) << " dev=" << fmt(max_dev)
               << " t=" << fmt(elapsed) << "s]";
    }
    report(1, "far-field oracle equivalence", pass,
           "max |I_num - I_sinc| vs 1% of peak, < 10 s each:" + detail.str());
}

// --- criterion 2: half-maximum of the sinc^2 lobe at u = 0.443 pi ----------

void criterion_2() {
    const BeamlineGeometry geom = reference_geometry(1e-6);
    const double lambda = 2.9054e-12;
    const double lobe = 0.886 * lambda * geom.drift_l2 / geom.s2_width;
    const Profile p = far_field_sinc(geom, lambda, ScreenGrid{2.0 * lobe, 1u << 15});
    const double fwhm = fwhm_crossing(p).fwhm;
    const double u_half =
        geom.s2_width * constants::pi / (lambda * geom.drift_l2) * (fwhm / 2.0);
    const double rel = std::abs(u_half / (0.443 * constants::pi) - 1.0);
    report(2, "sinc^2 half-width constant", rel < 0.002,
           "u_1/2 = " + fmt(u_half / constants::pi) + " pi, expected 0.443 pi (rel dev " +
               fmt(rel) + ", tol 0.2%)");
}

// --- criterion 3: detected widths at the two published slit settings -------

double detected_width(double slit_width, const RunConfig& config, double* elapsed) {
    const BeamlineGeometry geom = config.geometry.with_slit(slit_width);
    const auto t0 = std::chrono::steady_clock::now();
    const Profile wave = incoherent_beam_profile(geom, config.beam, config.propagation);
    const Profile seen = convolve_detector(wave, config.detector);
    const double fwhm = detail::measure_width(seen, slit_width).fwhm;
    *elapsed = seconds_since(t0);
    return fwhm;
}

void criterion_3() {
    const RunConfig config;  // full published defaults
    double t_wide = 0.0, t_narrow = 0.0;
    const double wide = detected_width(1.4e-6, config, &t_wide);
    const double narrow = detected_width(70e-9, config, &t_narrow);
    const bool pass = std::abs(wide - 17e-6) / 17e-6 < 0.15 &&
                      std::abs(narrow - 43e-6) / 43e-6 < 0.20 && t_wide < 120.0 &&
                      t_narrow < 120.0;
    report(3, "detected widths at 1.4 um and 70 nm", pass,
           "1.4 um -> " + fmt(wide * 1e6) + " um (want 17 +- 15%, t=" + fmt(t_wide) +
               "s); 70 nm -> " + fmt(narrow * 1e6) + " um (want 43 +- 20%, t=" + fmt(t_narrow) +
               "s)");
}

// --- criterion 4: wave/classical crossover over the full scan --------------

std::vector<ScanRow> g_scan_rows;  // reused by criterion 5

void criterion_4() {
    const RunConfig config;
    const auto t0 = std::chrono::steady_clock::now();
    const auto rows = run_scan(config.scan, config.geometry, config.beam, config.detector,
                               config.propagation, 1);
    const double t_single = seconds_since(t0);

    const auto t1 = std::chrono::steady_clock::now();
    const auto rows8 = run_scan(config.scan, config.geometry, config.beam, config.detector,
                                config.propagation, 8);
    const double t_eight = seconds_since(t1);

    std::ostringstream a, b;
    csv::write_scan(a, rows, "");
    csv::write_scan(b, rows8, "");
    const bool identical = a.str() == b.str();

    bool agree_above_4um = true, has_wide_points = false;
    double worst_wide = 0.0;
    for (const auto& r : rows) {
        if (!r.error.empty()) {
            agree_above_4um = false;
            continue;
        }
        if (r.slit_width >= 4e-6) {
            has_wide_points = true;
            const double rel = std::abs(r.fwhm_wave_detected - r.fwhm_classical_detected) /
                               r.fwhm_classical_detected;
            worst_wide = std::max(worst_wide, rel);
            agree_above_4um = agree_above_4um && rel < 0.05;
        }
    }
    const auto& first = rows.front();
    const double split =
        std::abs(first.fwhm_wave_detected - first.fwhm_classical_detected) /
        first.fwhm_classical_detected;

    const bool pass = agree_above_4um && has_wide_points && split > 0.50 && identical &&
                      t_single < 1800.0 && t_eight < 300.0;
    report(4, "crossover scan 70 nm - 20 um", pass,
           "max wave/classical split above 4 um " + fmt(worst_wide * 100) +
               "% (tol 5%); split at 70 nm " + fmt(split * 100) +
               "% (need > 50%); 8-worker output byte-identical: " +
               (identical ? "yes" : "no") + "; t1=" + fmt(t_single) + "s (< 1800), t8=" +
               fmt(t_eight) + "s (< 300)");
    g_scan_rows = rows;
}

// --- criterion 5: uncertainty products from simulated scans ----------------

void criterion_5() {
    const RunConfig config;

    // full chain: simulated detected widths, 70 nm - 2 um
    const ScanSpec span{70e-9, 2e-6, 9, ScanSpacing::logarithmic};
    const auto rows = run_scan(span, config.geometry, config.beam, config.detector,
                               config.propagation, 1);
    std::vector<MeasuredWidth> widths;
    for (const auto& r : rows)
        if (r.error.empty())
            widths.push_back({r.slit_width, r.fwhm_wave_detected, r.fwhm_wave_detected_unc});
    const auto full = uncertainty_curve(widths, config.beam, config.geometry, config.detector);
    std::size_t full_ok = 0;
    double full_lo = 1e300, full_hi = -1e300;
    bool full_pass = true;
    for (const auto& p : full) {
        if (p.flag != RegimeFlag::ok) continue;
        ++full_ok;
        full_lo = std::min(full_lo, p.product_over_h);
        full_hi = std::max(full_hi, p.product_over_h);
        full_pass = full_pass && p.product_over_h >= 0.75 && p.product_over_h <= 1.25;
    }
    full_pass = full_pass && full_ok >= 2;

    // idealized chain: monochromatic axial point source, detector off
    BeamlineGeometry ideal_geom = config.geometry;
    ideal_geom.s1_width = 1e-9;
    ThermalBeam ideal_beam = config.beam;
    PropagationSettings ideal_settings;
    ideal_settings.n_source_points = 1;
    ideal_settings.n_velocity_samples = 1;
    ideal_settings.screen_points = 4096;
    const DetectorResponse off{0.0, 0.0};
    std::size_t ideal_ok = 0;
    double ideal_lo = 1e300, ideal_hi = -1e300;
    bool ideal_pass = true;
    for (double slit : {70e-9, 100e-9, 150e-9, 220e-9, 320e-9, 420e-9}) {
        const BeamlineGeometry geom = ideal_geom.with_slit(slit);
        const Profile p = incoherent_beam_profile(geom, ideal_beam, ideal_settings);
        const double fwhm = fwhm_crossing(p).fwhm;
        const UncertaintyPoint point =
            uncertainty_point({slit, fwhm, 0.0}, ideal_beam, geom, off);
        if (point.flag != RegimeFlag::ok) continue;
        ++ideal_ok;
        ideal_lo = std::min(ideal_lo, point.product_over_h);
        ideal_hi = std::max(ideal_hi, point.product_over_h);
        ideal_pass = ideal_pass && point.product_over_h >= 0.9 && point.product_over_h <= 1.1;
    }
    ideal_pass = ideal_pass && ideal_ok >= 4;

    report(5, "uncertainty product dx*dp = h", full_pass && ideal_pass,
           "full chain: " + std::to_string(full_ok) + " far-field points, product/h in [" +
               fmt(full_lo) + ", " + fmt(full_hi) + "] (tol [0.75, 1.25]); idealized chain: " +
               std::to_string(ideal_ok) + " points in [" + fmt(ideal_lo) + ", " + fmt(ideal_hi) +
               "] (tol [0.9, 1.1])");
}

// --- criterion 6: property suites ------------------------------------------

void criterion_6() {
    std::ostringstream detail;
    bool pass = true;
    auto require = [&](bool ok, const std::string& name) {
        pass = pass && ok;
        detail << " [" << name << ": " << (ok ? "ok" : "FAILED") << "]";
    };

    {  // lambda * p = h
        std::mt19937 rng(1);
        std::uniform_real_distribution<double> mass(1.0, 1e4), speed(1.0, 1e4);
        bool ok = true;
        for (int i = 0; i < 100; ++i) {
            const Particle part{mass(rng), "x"};
            const double v = speed(rng);
            ok = ok && std::abs(de_broglie_wavelength(part, v) * longitudinal_momentum(part, v) /
                                    constants::planck -
                                1.0) < 1e-14;
        }
        require(ok, "lambda*p=h");
    }
    {  // velocity weights normalized
        bool ok = true;
        for (auto kind : {VelocityDistribution::gaussian_in_v, VelocityDistribution::effusive_flux}) {
            ThermalBeam beam = reference_beam();
            beam.distribution_kind = kind;
            double sum = 0.0;
            for (const auto& s : discretize_velocities(beam, 33)) sum += s.weight;
            ok = ok && std::abs(sum - 1.0) < 1e-12;
        }
        require(ok, "weight normalization");
    }
    {  // Gaussian (x) Gaussian quadrature within 1%
        const double half = 80e-6, f_in = 9e-6, f_det = 13.5e-6;
        const std::size_t n = 4096;
        const double pitch = 2.0 * half / static_cast<double>(n - 1);
        const double sigma = f_in / constants::gaussian_fwhm_per_sigma;
        std::vector<double> values(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double x = -half + pitch * static_cast<double>(i);
            values[i] = std::exp(-0.5 * x * x / (sigma * sigma));
        }
        const Profile in(-half, pitch, std::move(values));
        const double out = fwhm_crossing(convolve_detector(in, DetectorResponse{f_det, 0.0})).fwhm;
        require(std::abs(out - std::hypot(f_in, f_det)) / std::hypot(f_in, f_det) < 0.01,
                "gaussian quadrature");
    }
    {  // trapezoid FWHM analytic vs extracted
        const BeamlineGeometry geom = reference_geometry(8e-6);
        const ScreenGrid grid{60e-6, 2048};
        const double extracted = fwhm_crossing(classical_profile(geom, grid)).fwhm;
        require(std::abs(extracted - classical_fwhm(geom)) <= grid.pitch(), "trapezoid width");
    }
    {  // Monte-Carlo rays vs classical_profile within 3 sigma
        const BeamlineGeometry geom = reference_geometry(8e-6);
        const ScreenGrid grid{40e-6, 64};
        const Profile expected = classical_profile(geom, grid);
        std::mt19937_64 rng(9);
        std::uniform_real_distribution<double> u(-0.5, 0.5);
        std::vector<double> hits(grid.points, 0.0);
        const std::size_t rays = 2'000'000;
        for (std::size_t i = 0; i < rays; ++i) {
            const double xs = u(rng) * geom.s1_width;
            const double xi = u(rng) * geom.s2_width;
            const double x = xi + (xi - xs) * geom.drift_l2 / geom.drift_l1;
            const double t = (x + grid.halfwidth) / grid.pitch() + 0.5;
            if (t >= 0.0 && t < static_cast<double>(grid.points))
                hits[static_cast<std::size_t>(t)] += 1.0;
        }
        double total_expected = 0.0, total_hits = 0.0;
        for (std::size_t j = 0; j < grid.points; ++j) {
            total_expected += expected.intensity[j];
            total_hits += hits[j];
        }
        const double scale = total_hits / total_expected;
        std::size_t outliers = 0;
        for (std::size_t j = 0; j < grid.points; ++j) {
            const double mean = expected.intensity[j] * scale;
            if (std::abs(hits[j] - mean) > 3.0 * std::sqrt(std::max(mean, 1.0))) ++outliers;
        }
        require(outliers <= grid.points / 16, "ray histogram");
    }
    {  // grid-refinement stability < 1%
        const BeamlineGeometry geom = reference_geometry(0.5e-6);
        const ThermalBeam beam = reference_beam();
        PropagationSettings coarse;
        coarse.n_source_points = 17;
        coarse.n_velocity_samples = 9;
        coarse.screen_points = 1024;
        PropagationSettings fine = coarse;
        fine.screen_points = 2048;
        fine.max_phase_step = coarse.max_phase_step / 2.0;
        const double fc = fwhm_crossing(incoherent_beam_profile(geom, beam, coarse)).fwhm;
        const double ff = fwhm_crossing(incoherent_beam_profile(geom, beam, fine)).fwhm;
        require(std::abs(ff - fc) / fc < 0.01, "grid refinement");
    }
    {  // byte-identical output across worker counts
        const ScanSpec spec{0.3e-6, 3e-6, 4, ScanSpacing::logarithmic};
        PropagationSettings settings;
        settings.n_source_points = 9;
        settings.n_velocity_samples = 5;
        settings.screen_points = 512;
        auto serialize = [&](std::size_t workers) {
            std::ostringstream out;
            csv::write_scan(out,
                            run_scan(spec, reference_geometry(), reference_beam(),
                                     reference_detector(), settings, workers),
                            "");
            return out.str();
        };
        require(serialize(1) == serialize(5), "worker determinism");
    }
    report(6, "property suites", pass, detail.str());
}

// --- criterion 7: worked momentum extraction from the published widths -----

void criterion_7() {
    const ThermalBeam beam = reference_beam();
    const BeamlineGeometry geom = reference_geometry();
    const std::vector<MeasuredWidth> widths{{70e-9, 43e-6, 2e-6}, {1.4e-6, 17e-6, 1e-6}};
    const auto points = uncertainty_curve(widths, beam, geom, reference_detector());

    const double oracle_dp = 7.517276666757568e-27;  // hand-computed reference
    const auto& narrow = points[0];
    const bool narrow_ok = narrow.flag == RegimeFlag::ok &&
                           std::abs(narrow.dp / oracle_dp - 1.0) < 0.02 &&
                           std::abs(narrow.product_over_h - 0.794) < 0.02;
    // at 1.4 um the deconvolved width sits below the source-image shadow,
    // so the pipeline must flag the point instead of inventing a momentum
    const bool wide_flagged = points[1].flag == RegimeFlag::below_classical;

    report(7, "worked momentum extraction", narrow_ok && wide_flagged,
           "70 nm: dp = " + fmt(narrow.dp) + " kg m/s vs oracle " + fmt(oracle_dp) +
               " (tol 2%), product/h = " + fmt(narrow.product_over_h) +
               "; 1.4 um flagged " + to_string(points[1].flag));
}

}  // namespace

int main() {
    try {
        criterion_1();
        criterion_2();
        criterion_3();
        criterion_4();
        criterion_5();
        criterion_6();
        criterion_7();
    } catch (const std::exception& e) {
        std::cout << "[FAIL] acceptance run aborted: " << e.what() << "\n";
        return 1;
    }
    std::cout << (failures == 0 ? "acceptance: all criteria passed"
                                : "acceptance: " + std::to_string(failures) + " criteria failed")
              << "\n";
    return failures == 0 ? 0 : 1;
}
