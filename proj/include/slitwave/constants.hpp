#pragma once

namespace slitwave::constants {

// CODATA 2018 (h and k_B are exact SI definitions).
inline constexpr double planck = 6.62607015e-34;           // J s
inline constexpr double boltzmann = 1.380649e-23;          // J/K
inline constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg

inline constexpr double pi = 3.14159265358979323846;

// FWHM of a unit-sigma Gaussian: 2*sqrt(2*ln 2).
inline constexpr double gaussian_fwhm_per_sigma = 2.35482004503094938;

}  // namespace slitwave::constants
