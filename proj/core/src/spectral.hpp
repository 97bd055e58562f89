#pragma once

// Internal helpers shared by the force kernels: prefactors and the default
// map scales of the spectral integrals.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "vfl/geometry.hpp"
#include "vfl/materials.hpp"

namespace vfl::detail {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kPi2 = kPi * kPi;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Lowest transparency frequency among the given materials, +inf if none.
template <class Range>
double lowest_transparency(const Range& materials) {
  double omega = kInf;
  for (const DispersionModel& m : materials) {
    if (auto w = transparency_frequency(m)) omega = std::min(omega, *w);
  }
  return omega;
}

inline double lowest_transparency(const Stack& stack) {
  double omega = kInf;
  for (const auto& l : stack.layers) {
    if (auto w = transparency_frequency(l.material)) omega = std::min(omega, *w);
  }
  return omega;
}

/// k decays as exp(-2 k length).
inline double k_scale(double length) {
  return length > 0.0 && std::isfinite(length) ? 0.5 / length : 1.0;
}

/// xi decays with the geometry or beyond the material resonances.
inline double xi_scale(double length, double omega) {
  const double s = k_scale(length);
  return std::isfinite(omega) && omega > 0.0 ? std::min(s, omega) : s;
}

}  // namespace vfl::detail
