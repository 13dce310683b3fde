#pragma once

namespace isac {

// Propagation constant used throughout the radar-equation terms.
inline constexpr double kSpeedOfLight = 3.0e8;  // m/s

// SI-defined Boltzmann constant.
inline constexpr double kBoltzmann = 1.380649e-23;  // J/K

inline constexpr double kPi = 3.141592653589793238462643383279502884;

}  // namespace isac
