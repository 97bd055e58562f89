#pragma once

// Conversion of dimensionless results to SI. Frequencies are in units of
// Omega_ref (rad/s), lengths in c / Omega_ref, hbar = c = 1.

#include <stdexcept>

namespace vfl::units {

inline constexpr double hbar = 1.054571817e-34;     // J s
inline constexpr double speed_of_light = 299792458.0;  // m/s

struct Reference {
  double omega = 1.0;  // rad/s

  [[nodiscard]] double length() const noexcept { return speed_of_light / omega; }
  /// Force per area: hbar Omega^4 / c^3.
  [[nodiscard]] double pressure() const noexcept {
    const double w2 = omega * omega;
    return hbar * w2 * w2 / (speed_of_light * speed_of_light * speed_of_light);
  }
  /// Force on one atom: hbar Omega^2 / c.
  [[nodiscard]] double atom_force() const noexcept {
    return hbar * omega * omega / speed_of_light;
  }
  /// Polarizability volume: (c / Omega)^3.
  [[nodiscard]] double volume() const noexcept {
    const double l = length();
    return l * l * l;
  }
};

[[nodiscard]] inline Reference reference(double omega) {
  if (!(omega > 0.0)) throw std::invalid_argument("reference frequency must be positive");
  return Reference{omega};
}

}  // namespace vfl::units
