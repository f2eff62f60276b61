#pragma once
//
// Physical constants (SI, CODATA 2018) and small numeric helpers.
// Everything inside the library is strict SI: metres, kilograms, seconds,
// kelvin, pascal, and rad/s for every rate and frequency.  Unit conversion
// happens only at the CLI/config boundary (see units.hpp).

namespace cscool {

inline constexpr double kHbar    = 1.054571817e-34;  // J s
inline constexpr double kBoltz   = 1.380649e-23;     // J/K
inline constexpr double kClight  = 2.99792458e8;     // m/s
inline constexpr double kEps0    = 8.8541878128e-12; // F/m
inline constexpr double kPi      = 3.14159265358979323846;
inline constexpr double kTwoPi   = 2.0 * kPi;

// Default gas model: air at room temperature (mean molecular mass).
inline constexpr double kAirMoleculeMass = 4.81e-26; // kg
inline constexpr double kRoomTemperature = 300.0;    // K

} // namespace cscool
