#pragma once

#include <numbers>

namespace rydgate::units {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Frequencies are quoted in MHz with the 2π divided out; internally rad/s.
constexpr double mhz(double f) { return two_pi * 1e6 * f; }
constexpr double to_mhz(double w) { return w / (two_pi * 1e6); }
constexpr double ghz(double f) { return two_pi * 1e9 * f; }

constexpr double ns(double t) { return 1e-9 * t; }
constexpr double us(double t) { return 1e-6 * t; }
constexpr double to_ns(double t) { return 1e9 * t; }
constexpr double to_us(double t) { return 1e6 * t; }

constexpr double microkelvin(double temp) { return 1e-6 * temp; }
constexpr double millikelvin(double temp) { return 1e-3 * temp; }

// C6 given in THz·µm⁶ (÷2π convention).
constexpr double thz_um6(double c6) { return two_pi * 1e12 * c6; }

inline constexpr double boltzmann = 1.380649e-23;      // J/K
inline constexpr double atomic_mass = 1.66053906660e-27;  // kg
inline constexpr double rb87_mass = 86.909180527 * atomic_mass;

}  // namespace rydgate::units
