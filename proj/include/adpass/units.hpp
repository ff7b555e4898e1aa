#pragma once

#include <numbers>

// Unit conventions used throughout the library:
//  - time in microseconds
//  - all internal frequencies are *angular* (rad/us)
//  - user-facing config values are linear frequencies in MHz and are
//    multiplied by 2*pi on ingestion

namespace adpass {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// linear MHz -> rad/us
constexpr double mhz(double f) { return two_pi * f; }

// rad/us -> linear MHz
constexpr double to_mhz(double w) { return w / two_pi; }

// sign function with the documented convention sgn(0) = +1
constexpr double sgn(double x) { return x < 0.0 ? -1.0 : 1.0; }

}  // namespace adpass
