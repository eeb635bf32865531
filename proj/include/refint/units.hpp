#pragma once

#include <numbers>

namespace refint::units {

// Internal unit system is SI: meters and radians.
inline constexpr double angstrom = 1e-10;
inline constexpr double millimeter = 1e-3;
inline constexpr double centimeter = 1e-2;
inline constexpr double meter = 1.0;
inline constexpr double milliradian = 1e-3;
inline constexpr double degree = std::numbers::pi / 180.0;

constexpr double deg_to_rad(double deg) { return deg * degree; }
constexpr double rad_to_deg(double rad) { return rad / degree; }

}  // namespace refint::units
