#pragma once

#include <string_view>

#include "vfl/quadrature.hpp"

namespace vfl {

enum class ForceKind {
  slab_total,     // f_s from the stress difference
  screened,       // f^(1)
  assisted,       // f^(2)
  medium_layer,   // f_m
  atom_assisted,  // f_a
  atom_vacuum,    // single-atom force
  interface,      // f_int
  minkowski,      // slab force from the Minkowski tensor
};

[[nodiscard]] std::string_view to_string(ForceKind kind) noexcept;

/// Signed force along +z: per unit area in hbar Omega^4 / c^3, or per atom in
/// hbar Omega^2 / c for the atom kinds.
struct ForceResult {
  double value = 0.0;
  ForceKind kind = ForceKind::slab_total;
  double error_estimate = 0.0;
  bool converged = false;
  long evaluations = 0;
  QuadratureStatus status = QuadratureStatus::converged;

  [[nodiscard]] static ForceResult from(const IntegrationResult& r, ForceKind kind) {
    return {r.value, kind, r.error_estimate, r.converged, r.evaluations, r.status};
  }
};

}  // namespace vfl
