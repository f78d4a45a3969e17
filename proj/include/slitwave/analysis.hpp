#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "slitwave/beam.hpp"
#include "slitwave/classical.hpp"
#include "slitwave/constants.hpp"
#include "slitwave/detector.hpp"
#include "slitwave/errors.hpp"
#include "slitwave/geometry.hpp"

namespace slitwave {

// FWHM of the sinc^2 central lobe in units of the first-zero position:
// the half-maximum sits at u = 0.443 pi, so the momentum uncertainty follows
// from the measured FWHM via Delta p = Delta p_FWHM / 0.89.
inline constexpr double kHalfMaxFactor = 0.89;

// Slit-width error model: absolute zero-position error plus relative
// calibration error of the piezo hysteresis curve.
inline constexpr double kSlitZeroError = 30e-9;       // m
inline constexpr double kSlitCalibrationError = 0.03; // relative

// Far-field validity bound for the momentum extraction.
inline constexpr double kFarFieldFresnelNumber = 0.05;

struct WidthDecomposition {
    double x_exp;       // detected FWHM
    double x_detector;  // detector effective FWHM
    double x_mol;       // molecular beam FWHM after deconvolution
    double x_cl;        // classical shadow FWHM
    double x_qu;        // quantum contribution
};

// sqrt(total^2 - component^2): width-level deconvolution of independent
// quadratically-adding contributions.
inline double quadrature_subtract(double total, double component) {
    if (!(component >= 0.0) || !(total >= component))
        throw DecompositionError("quadrature_subtract needs total >= component >= 0");
    return std::sqrt(total * total - component * component);
}

// Momentum spread from the measured widths:
//   Delta p = p_z / (0.89 L2) * ( sqrt(x_mol^2 - x_cl^2) - slit_width )
// A negative bracket (no broadening beyond the classical shadow) yields a
// non-positive result; callers flag it rather than aborting.
inline double momentum_uncertainty(double x_mol, double x_cl, double slit_width, double p_z,
                                   double drift_l2) {
    if (x_mol < x_cl)
        throw DecompositionError("molecular width below the classical shadow width");
    const double bracket = quadrature_subtract(x_mol, x_cl) - slit_width;
    return p_z / (kHalfMaxFactor * drift_l2) * bracket;
}

// The expectation Delta x * Delta p = h.
inline double theoretical_dp(double slit_width) {
    if (!(slit_width > 0.0)) throw DomainError("slit width must be positive");
    return constants::planck / slit_width;
}

enum class RegimeFlag {
    ok,
    detector_dominated,   // detected width below the detector resolution
    below_classical,      // molecular width below the classical shadow
    classical_dominated,  // quantum broadening does not exceed the shadow width
    near_field,           // slit too wide for the far-field momentum relation
    measurement_failed,   // FWHM extraction failed upstream
};

inline std::string to_string(RegimeFlag flag) {
    switch (flag) {
    case RegimeFlag::ok: return "ok";
    case RegimeFlag::detector_dominated: return "detector_dominated";
    case RegimeFlag::below_classical: return "below_classical_resolution";
    case RegimeFlag::classical_dominated: return "classical_dominated";
    case RegimeFlag::near_field: return "near_field";
    case RegimeFlag::measurement_failed: return "measurement_failed";
    }
    return "unknown";
}

struct UncertaintyPoint {
    double slit_width;      // m
    double slit_width_err;  // m
    double dp = 0.0;        // kg m/s
    double dp_err = 0.0;    // kg m/s
    double product_over_h = 0.0;
    RegimeFlag flag = RegimeFlag::ok;
};

// One measured (or simulated) scan entry: detected FWHM at a slit width.
struct MeasuredWidth {
    double slit_width;     // m
    double fwhm;           // m, detected (detector-convolved) FWHM
    double fwhm_unc = 0.0; // m
};

// The uncertainty-product pipeline for one point: deconvolve the detector
// (quadrature), split off the classical shadow (quadrature), apply the
// momentum relation, and propagate slit-width and width errors to first order.
// Points outside the far-field quantum regime are flagged, not dropped.
inline UncertaintyPoint uncertainty_point(const MeasuredWidth& row, const ThermalBeam& beam,
                                          const BeamlineGeometry& base_geometry,
                                          const DetectorResponse& det) {
    const BeamlineGeometry geom = base_geometry.with_slit(row.slit_width);
    UncertaintyPoint point;
    point.slit_width = row.slit_width;
    point.slit_width_err = std::sqrt(kSlitZeroError * kSlitZeroError +
                                     kSlitCalibrationError * kSlitCalibrationError *
                                         row.slit_width * row.slit_width);

    const double det_eff = det.fwhm > 0.0 ? det.effective_fwhm() : 0.0;
    if (row.fwhm < det_eff) {
        point.flag = RegimeFlag::detector_dominated;
        return point;
    }
    const double x_mol = quadrature_subtract(row.fwhm, det_eff);
    const double x_cl = classical_fwhm(geom);
    if (x_mol < x_cl) {
        point.flag = RegimeFlag::below_classical;
        return point;
    }
    const double x_qu = quadrature_subtract(x_mol, x_cl);
    const double p_z = longitudinal_momentum(beam.particle, beam.mean_velocity);
    point.dp = momentum_uncertainty(x_mol, x_cl, row.slit_width, p_z, geom.drift_l2);
    point.product_over_h = row.slit_width * point.dp / constants::planck;

    // d(bracket)/d(fwhm) = fwhm / x_qu; d(bracket)/d(dx) = -1 plus the shadow
    // term when the projected slit sets the classical width
    const double scale = p_z / (kHalfMaxFactor * geom.drift_l2);
    const double d_fwhm = x_qu > 0.0 ? row.fwhm / x_qu : 0.0;
    double d_slit = -1.0;
    if (geom.projected_slit_width() > geom.projected_source_width() && x_qu > 0.0)
        d_slit -= (x_cl / x_qu) * (geom.drift_l1 + geom.drift_l2) / geom.drift_l1;
    point.dp_err = scale * std::hypot(d_fwhm * row.fwhm_unc, d_slit * point.slit_width_err);

    const double lambda = de_broglie_wavelength(beam.particle, beam.mean_velocity);
    const double fresnel_number = row.slit_width * row.slit_width / (lambda * geom.drift_l2);
    if (fresnel_number > kFarFieldFresnelNumber)
        point.flag = RegimeFlag::near_field;
    else if (x_qu <= x_cl)
        point.flag = RegimeFlag::classical_dominated;
    return point;
}

// Full scan. Per-point failures become flagged points; an empty scan yields an
// empty curve.
inline std::vector<UncertaintyPoint> uncertainty_curve(const std::vector<MeasuredWidth>& rows,
                                                       const ThermalBeam& beam,
                                                       const BeamlineGeometry& geom,
                                                       const DetectorResponse& det) {
    std::vector<UncertaintyPoint> points;
    points.reserve(rows.size());
    for (const auto& row : rows) points.push_back(uncertainty_point(row, beam, geom, det));
    return points;
}

}  // namespace slitwave
