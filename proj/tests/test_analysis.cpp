#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "slitwave/analysis.hpp"
#include "slitwave/detector.hpp"
#include "slitwave/fresnel.hpp"
#include "slitwave/fwhm.hpp"

using namespace slitwave;
using Catch::Approx;

namespace {

Profile gaussian_profile(double fwhm, double halfwidth, std::size_t n,
                         double amplitude = 1.0, double offset = 0.0) {
    const double sigma = fwhm / constants::gaussian_fwhm_per_sigma;
    const double pitch = 2.0 * halfwidth / static_cast<double>(n - 1);
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = -halfwidth + pitch * static_cast<double>(i);
        values[i] = amplitude * std::exp(-0.5 * x * x / (sigma * sigma)) + offset;
    }
    return Profile(-halfwidth, pitch, std::move(values));
}

Profile triangle_profile(double base_halfwidth, double halfwidth, std::size_t n) {
    const double pitch = 2.0 * halfwidth / static_cast<double>(n - 1);
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = -halfwidth + pitch * static_cast<double>(i);
        values[i] = std::max(0.0, 1.0 - std::abs(x) / base_halfwidth);
    }
    return Profile(-halfwidth, pitch, std::move(values));
}

}  // namespace

TEST_CASE("crossing FWHM of elementary shapes") {
    // triangle of base 2a has FWHM a
    const Profile tri = triangle_profile(12e-6, 40e-6, 4096);
    CHECK(fwhm_crossing(tri).fwhm == Approx(12e-6).margin(tri.dx_grid));

    const Profile gauss = gaussian_profile(9e-6, 50e-6, 4096);
    CHECK(fwhm_crossing(gauss).fwhm == Approx(9e-6).epsilon(1e-5));
}

TEST_CASE("crossing FWHM rejects non-decaying profiles") {
    std::vector<double> ramp(64);
    for (std::size_t i = 0; i < ramp.size(); ++i) ramp[i] = static_cast<double>(i + 1);
    CHECK_THROWS_AS(fwhm_crossing(Profile(0.0, 1e-6, ramp)), ShapeError);
    std::vector<double> flat(64, 1.0);
    CHECK_THROWS_AS(fwhm_crossing(Profile(0.0, 1e-6, flat)), ShapeError);
}

TEST_CASE("gaussian fit recovers a noiseless gaussian exactly") {
    const Profile p = gaussian_profile(9e-6, 50e-6, 2048, 3.7, 0.25);
    const FwhmResult r = fwhm_gaussian_fit(p);
    CHECK(r.fwhm == Approx(9e-6).epsilon(1e-6));
    CHECK(r.fit_rms < 1e-8);
    CHECK(r.uncertainty < 1e-10);
}

TEST_CASE("gaussian fit on counting noise stays within 5%") {
    const Profile clean = gaussian_profile(9e-6, 50e-6, 512);
    for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
        const Profile noisy = add_counting_noise(clean, 50000, seed);
        const FwhmResult r = fwhm_gaussian_fit(noisy);
        CHECK(r.fwhm == Approx(9e-6).epsilon(0.05));
        CHECK(r.uncertainty > 0.0);
        CHECK(r.uncertainty < 0.05 * r.fwhm);
    }
}

TEST_CASE("gaussian fit on a sinc^2 lands within 10% of the crossing width") {
    const BeamlineGeometry geom = reference_geometry(1e-6);
    const Profile p = far_field_sinc(geom, 2.9054e-12, ScreenGrid{8e-6, 2048});
    const double crossing = fwhm_crossing(p).fwhm;
    const double fitted = fwhm_gaussian_fit(p).fwhm;
    CHECK(std::abs(fitted - crossing) / crossing < 0.10);
}

TEST_CASE("gaussian fit precondition: enough points above 10% of peak") {
    // a spike ~3 samples wide leaves too few points above threshold
    const Profile spike = gaussian_profile(3.0 * (100e-6 / 255.0), 50e-6, 256);
    CHECK_THROWS_AS(fwhm_gaussian_fit(spike), PreconditionError);
}

TEST_CASE("quadrature subtraction") {
    CHECK(quadrature_subtract(5.0, 3.0) == Approx(4.0).epsilon(1e-14));
    CHECK(quadrature_subtract(7.5e-6, 0.0) == Approx(7.5e-6).epsilon(1e-14));
    CHECK(quadrature_subtract(17e-6, 13.5e-6) == Approx(1.0331989159885912e-05).epsilon(1e-12));
    CHECK_THROWS_AS(quadrature_subtract(3.0, 5.0), DecompositionError);
    CHECK_THROWS_AS(quadrature_subtract(3.0, -1.0), DecompositionError);
}

TEST_CASE("momentum relation at the narrowest slit") {
    // 43 um detected width at a 70 nm slit, v = 163.5 m/s
    const double x_mol = quadrature_subtract(43e-6, 13.5e-6);
    const double x_cl = classical_fwhm(reference_geometry(70e-9));
    const double p_z = longitudinal_momentum(c70(), 163.5);
    const double dp = momentum_uncertainty(x_mol, x_cl, 70e-9, p_z, 1.33);
    CHECK(dp == Approx(7.518288028898115e-27).epsilon(1e-12));
    CHECK(70e-9 * dp / constants::planck == Approx(0.7942568522653931).epsilon(1e-12));

    CHECK_THROWS_AS(momentum_uncertainty(10e-6, 11e-6, 1e-6, p_z, 1.33), DecompositionError);
}

TEST_CASE("momentum relation is linear in the longitudinal momentum") {
    const double p_z = longitudinal_momentum(c70(), 163.5);
    const double a = momentum_uncertainty(40e-6, 11.77e-6, 1e-6, p_z, 1.33);
    const double b = momentum_uncertainty(40e-6, 11.77e-6, 1e-6, 2.0 * p_z, 1.33);
    CHECK(b == Approx(2.0 * a).epsilon(1e-14));
}

TEST_CASE("expected momentum spread from the uncertainty relation") {
    CHECK(theoretical_dp(100e-9) == Approx(6.62607015e-27).epsilon(1e-14));
    CHECK(theoretical_dp(50e-9) == Approx(2.0 * theoretical_dp(100e-9)).epsilon(1e-14));
    CHECK_THROWS_AS(theoretical_dp(0.0), DomainError);
}

TEST_CASE("uncertainty point: narrowest-slit reference values") {
    const ThermalBeam beam = reference_beam();
    const BeamlineGeometry geom = reference_geometry(70e-9);
    const UncertaintyPoint p =
        uncertainty_point({70e-9, 43e-6, 2e-6}, beam, geom, reference_detector());
    CHECK(p.flag == RegimeFlag::ok);
    CHECK(p.dp == Approx(7.517276666757568e-27).epsilon(1e-12));
    CHECK(p.product_over_h == Approx(0.7941500086186528).epsilon(1e-12));
    CHECK(p.dp_err > 0.0);
    CHECK(p.slit_width_err == Approx(std::hypot(30e-9, 0.03 * 70e-9)).epsilon(1e-12));
}

TEST_CASE("uncertainty point: regime flags") {
    const ThermalBeam beam = reference_beam();
    const BeamlineGeometry geom = reference_geometry(1e-6);
    const DetectorResponse det = reference_detector();

    // the wide-slit fig-2a width sits below the geometric shadow after deconvolution
    CHECK(uncertainty_point({1.4e-6, 17e-6, 0.0}, beam, geom, det).flag ==
          RegimeFlag::below_classical);

    // detected width below the detector resolution
    CHECK(uncertainty_point({1e-6, 10e-6, 0.0}, beam, geom, det).flag ==
          RegimeFlag::detector_dominated);

    // a 10 um slit is far outside the far-field regime
    CHECK(uncertainty_point({10e-6, 60e-6, 0.0}, beam, geom, det).flag ==
          RegimeFlag::near_field);
}

TEST_CASE("uncertainty point with the detector switched off") {
    const ThermalBeam beam = reference_beam();
    const UncertaintyPoint p = uncertainty_point({70e-9, 43e-6, 0.0}, beam,
                                                 reference_geometry(70e-9),
                                                 DetectorResponse{0.0, 0.0});
    CHECK(p.flag == RegimeFlag::ok);
    // no deconvolution: x_mol = 43 um directly
    const double p_z = longitudinal_momentum(beam.particle, beam.mean_velocity);
    const double expected = momentum_uncertainty(
        43e-6, classical_fwhm(reference_geometry(70e-9)), 70e-9, p_z, 1.33);
    CHECK(p.dp == Approx(expected).epsilon(1e-14));
}

TEST_CASE("empty scan yields an empty curve") {
    CHECK(uncertainty_curve({}, reference_beam(), reference_geometry(1e-6),
                            reference_detector())
              .empty());
}

TEST_CASE("idealized sinc chain: product near unity, independent of wavelength and drift") {
    // negligible source, no detector: the product reduces to ~0.886/0.89
    BeamlineGeometry geom{1e-9, 0.1e-6, 1.13, 1.33};
    ThermalBeam beam = reference_beam();
    const DetectorResponse off{0.0, 0.0};

    std::vector<double> products;
    for (double v : {82.0, 163.5, 327.0}) {
        for (double l2 : {1.33, 2.66}) {
            geom.drift_l2 = l2;
            beam.mean_velocity = v;
            const double lambda = de_broglie_wavelength(beam.particle, v);
            const double span = 4.0 * 0.886 * lambda * l2 / geom.s2_width;
            const Profile p = far_field_sinc(geom, lambda, ScreenGrid{span, 8192});
            const double fwhm = fwhm_crossing(p).fwhm;
            const UncertaintyPoint point =
                uncertainty_point({geom.s2_width, fwhm, 0.0}, beam, geom, off);
            REQUIRE(point.flag == RegimeFlag::ok);
            products.push_back(point.product_over_h);
        }
    }
    for (double prod : products) {
        CHECK(prod == Approx(0.886 / 0.89).epsilon(0.02));
        CHECK(prod == Approx(products.front()).epsilon(0.01));
    }
}
