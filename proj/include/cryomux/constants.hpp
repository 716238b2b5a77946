#pragma once

#include <numbers>

namespace cryomux {

// Magnetic flux quantum h/2e [Wb], CODATA value.
inline constexpr double flux_quantum_wb = 2.067833848e-15;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Convert a frequency given as f = x/2pi [Hz] to angular units [rad/s].
inline constexpr double angular_from_cycles(double f_hz) { return two_pi * f_hz; }

/// Convert an angular frequency [rad/s] to cycles [Hz].
inline constexpr double cycles_from_angular(double omega) { return omega / two_pi; }

}  // namespace cryomux
