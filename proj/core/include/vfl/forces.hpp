#pragma once

// Forces in the slab-in-cavity scene, on layers of the cavity medium and on
// atoms near a mirror. A positive value points along +z, towards mirror 2.

#include "vfl/force_result.hpp"
#include "vfl/fresnel.hpp"
#include "vfl/geometry.hpp"
#include "vfl/quadrature.hpp"
#include "vfl/stress.hpp"

namespace vfl {

/// Per-mode cavity data at one (q, xi, k).
struct ModeCoefficients {
  double kappa = 0.0;  // in the cavity medium
  double rho = 0.0;    // medium-slab interface
  double r = 0.0;      // whole slab
  double t = 1.0;
  double bracket = 0.0;  // (1 + r)^2 - t^2
  double r1 = 0.0;       // mirror 1 seen from the cavity (0 if absent)
  double r2 = 0.0;
  double e1 = 0.0;  // exp(-2 kappa d1)
  double e2 = 0.0;  // exp(-2 kappa d2)
  double D1 = 1.0;  // denominators of the two gaps
  double D2 = 1.0;
  double N = 1.0;
};

/// Expects a validated scene.
[[nodiscard]] ModeCoefficients cavity_mode(Polarization q, double xi, double k,
                                           const CavityScene& scene);

struct CavitySplit {
  ForceResult screened;  // f^(1)
  ForceResult assisted;  // f^(2)
  ForceResult total;     // f_s from the stress difference across the slab
};

/// Throws SceneError for an invalid scene.
[[nodiscard]] CavitySplit cavity_force_split(const CavityScene& scene,
                                             const QuadratureSpec& spec);

[[nodiscard]] ForceResult screened_force(const CavityScene& scene,
                                         const QuadratureSpec& spec);
[[nodiscard]] ForceResult assisted_force(const CavityScene& scene,
                                         const QuadratureSpec& spec);

/// f_s alone, from the stress difference across the slab.
[[nodiscard]] ForceResult slab_force(const CavityScene& scene, const QuadratureSpec& spec);

/// Slab force from the Minkowski tensor (no medium-assisted part).
[[nodiscard]] ForceResult minkowski_slab_force(const CavityScene& scene,
                                               const QuadratureSpec& spec);

/// f^(2) with a single mirror at distance d (semi-infinite cavity).
[[nodiscard]] ForceResult medium_assisted_semiinfinite(const Mirror& mirror,
                                                       const DispersionModel& medium,
                                                       const Slab& slab, double d,
                                                       const QuadratureSpec& spec);

/// Force on a layer of the cavity medium of thickness ds at distance d.
/// ds may be semi_infinite.
[[nodiscard]] ForceResult medium_layer_force(const Mirror& mirror,
                                             const DispersionModel& medium, double d,
                                             double ds, const QuadratureSpec& spec);

/// alpha(i xi) = alpha0 w^2 / (w^2 + xi^2); an infinite resonance gives a
/// constant polarizability. Volume units l_ref^3.
struct Polarizability {
  double static_value = 0.0;
  double resonance = semi_infinite;

  [[nodiscard]] double at(double xi) const noexcept;
};

struct AtomProperties {
  Polarizability electric;
  Polarizability magnetic;

  /// Throws std::invalid_argument for negative or non-finite parameters.
  void validate() const;
  /// Lowest finite resonance, +inf for constant polarizabilities.
  [[nodiscard]] double transparency() const noexcept;
};

/// Medium-assisted force on one atom embedded in the cavity medium, per atom
/// in hbar Omega^2 / c.
[[nodiscard]] ForceResult atom_force(const Mirror& mirror, const DispersionModel& medium,
                                     const AtomProperties& atom, double d,
                                     const QuadratureSpec& spec);

/// Force on a single atom in vacuum.
[[nodiscard]] ForceResult atom_force_vacuum(const Mirror& mirror,
                                            const AtomProperties& atom, double d,
                                            const QuadratureSpec& spec);

/// The cavity medium followed by the mirror layers.
[[nodiscard]] Stack mirror_stack(const DispersionModel& medium, const Mirror& mirror);

}  // namespace vfl
