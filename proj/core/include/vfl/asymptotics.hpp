#pragma once

// Small- and large-distance forms of the semi-infinite-cavity forces, the
// ideal-mirror closed forms and regime diagnostics.
//
// Small distances (d << Lambda): kappa = k in every layer, u = 2 k d.
// Large distances (d >> Lambda): kappa_l = n xi s_l, static material values,
// v = 2 n0 xi p d.

#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "vfl/forces.hpp"

namespace vfl {

/// The requested formula does not describe the scene (for example a thin-slab
/// form with a slab thicker than the gap).
class AsymptoticError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Regime { small, crossover, large };

[[nodiscard]] std::string_view to_string(Regime r) noexcept;

struct RegimeScales {
  std::optional<double> omega;  // mirror transparency frequency
  double lambda = 0.0;          // 2 pi / omega; 0 without a frequency scale

  /// small below lambda/20, large above 5 lambda. Without a frequency scale
  /// every distance is large. Advisory only.
  [[nodiscard]] Regime label(double d) const noexcept;
};

[[nodiscard]] RegimeScales regime_scales(std::optional<double> omega) noexcept;
/// Uses the highest transparency frequency among the mirror layers.
[[nodiscard]] RegimeScales regime_scales(const CavityScene& scene);

enum class SmallKind {
  assisted,             // general nonretarded f^(2)
  assisted_lifshitz,    // thick slab, single-medium mirror
  screened,             // general nonretarded f^(1)
  screened_lifshitz,    // thick slab, single-medium mirror
  assisted_thin,        // first order in ds/d
  assisted_thin_single, // thin slab, single-medium mirror
  medium,               // f_m
  medium_thin,
};

enum class LargeKind {
  assisted_general,   // (xi, p) form, frequency dependent
  assisted,           // static values
  assisted_lifshitz,
  screened,           // static values
  screened_lifshitz,
  assisted_thin,
  medium,
  medium_thin,
};

/// The scene must be a semi-infinite cavity; d replaces gap2. For the medium
/// kinds only the slab thickness is used. Throws AsymptoticError on a
/// kind/scene mismatch and SceneError on an invalid scene.
[[nodiscard]] ForceResult small_distance_force(SmallKind kind, const CavityScene& scene,
                                               double d, const QuadratureSpec& spec);
[[nodiscard]] ForceResult large_distance_force(LargeKind kind, const CavityScene& scene,
                                               double d, const QuadratureSpec& spec);

/// Medium-assisted atom force in the two limits, per atom.
[[nodiscard]] ForceResult small_distance_atom_force(const Mirror& mirror,
                                                    const DispersionModel& medium,
                                                    const AtomProperties& atom, double d,
                                                    const QuadratureSpec& spec);
[[nodiscard]] ForceResult large_distance_atom_force(const Mirror& mirror,
                                                    const DispersionModel& medium,
                                                    const AtomProperties& atom, double d,
                                                    const QuadratureSpec& spec);

/// f * d^4 for ideal mirrors around a static medium.
struct IdealClosedForms {
  double assisted = 0.0;
  double screened = 0.0;
};

[[nodiscard]] IdealClosedForms ideal_mirror_closed_forms(double epsilon0, double mu0);

/// R(0, p) of a mirror at zero frequency seen from a static medium. Finite
/// layers are optically thin in this limit.
[[nodiscard]] double static_radial_reflection(Polarization q, double p,
                                              const DispersionModel& medium,
                                              const Mirror& mirror);

/// int_1^inf dp p^-4 sum_q Delta_q R^q(0, p).
[[nodiscard]] IntegrationResult radial_mirror_integral(const Mirror& mirror,
                                                       const DispersionModel& medium,
                                                       const HalfLineRule& rule = {1e-12});

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Least-squares fit of log|y| against log x. Throws std::invalid_argument
/// for fewer than two points, non-positive x or zero y.
[[nodiscard]] SlopeFit fit_loglog_slope(std::span<const double> x, std::span<const double> y);

enum class ReportKind { screened, assisted, medium };

struct RegimeRow {
  double d = 0.0;
  Regime label = Regime::crossover;
  ForceResult full;
  std::optional<ForceResult> small;
  std::optional<ForceResult> large;
  double slope_full = 0.0;  // windowed log-log slopes, NaN when undefined
  double slope_small = 0.0;
  double slope_large = 0.0;
};

/// Full and asymptotic values over a monotone grid of distances.
[[nodiscard]] std::vector<RegimeRow> regime_report(ReportKind kind, const CavityScene& scene,
                                                   std::span<const double> grid,
                                                   const QuadratureSpec& spec);

}  // namespace vfl
