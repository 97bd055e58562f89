#pragma once

// Imaginary-axis zz stress in a layer of a planar stack, in units of
// hbar Omega_ref^4 / c^3.
//
// T(z) = -(1/8 pi^2) int dxi mu int dk k/kappa sum_q g_q(i xi, k; z)

#include <span>

#include "vfl/force_result.hpp"
#include "vfl/fresnel.hpp"
#include "vfl/geometry.hpp"
#include "vfl/quadrature.hpp"

namespace vfl {

enum class StressMode { lorentz, minkowski };

/// Where a layer sits in its stack. External layers use d = 0 in the
/// g-functions, with z <= 0 in the left one and z >= 0 in the right one.
enum class LayerSpan { finite, left_half, right_half };

/// Everything g needs about one layer for one polarization.
struct LayerContext {
  double r_minus = 0.0;  // reflection of the stack to the left
  double r_plus = 0.0;   // reflection of the stack to the right
  double thickness = 0.0;
  MaterialResponse response;
  LayerSpan span = LayerSpan::finite;
};

/// Lorentz-force mode function g_q(i xi, k; z). Throws std::invalid_argument
/// when z lies outside the layer.
[[nodiscard]] double g_mode(Polarization q, double xi, double k,
                            const LayerContext& layer, double z);

/// Minkowski mode function -4 kappa^2 r- r+ e^{-2 kappa d} / D.
[[nodiscard]] double g_minkowski(Polarization q, double xi, double k,
                                 const LayerContext& layer);

/// Builds the context of `point.layer` from an evaluated stack.
[[nodiscard]] LayerContext layer_context(Polarization q,
                                         std::span<const StackLayer> stack,
                                         std::size_t layer, const KappaRule& rule);

struct StressSample {
  std::size_t layer = 0;
  double z = 0.0;
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = false;
  StressMode mode = StressMode::lorentz;
};

/// T_zz at a point of a validated stack. The stress in a dielectric layer
/// diverges at its boundaries; such a request reports converged = false.
[[nodiscard]] StressSample stress_zz(const Stack& stack, StackPoint point,
                                     StressMode mode, const QuadratureSpec& spec);

/// T(right) - T(left) evaluated as one integral, so that the boundary
/// divergences of the two samples cancel inside the integrand.
[[nodiscard]] IntegrationResult stress_difference(const Stack& right_stack,
                                                  StackPoint right,
                                                  const Stack& left_stack,
                                                  StackPoint left, StressMode mode,
                                                  const QuadratureSpec& spec);

/// Force per unit area on the layer (-a0, an) around a single interface.
[[nodiscard]] ForceResult interface_force(const InterfaceScene& scene,
                                          const QuadratureSpec& spec);

/// Per-mode integrands of the equal-point traces at omega = i xi, with the
/// common factor i mu / (2 pi beta) removed: omega^2 (G_zz - G_par) and
/// (G^B_zz - G^B_par). Their sum equals -(g_p + g_s).
struct GreenTraces {
  double electric = 0.0;
  double magnetic = 0.0;
};

[[nodiscard]] GreenTraces equal_point_traces(double xi, double k,
                                             const LayerContext& tm,
                                             const LayerContext& te, double z);

struct ModeIdentity {
  double lhs = 0.0;  // polarization block of -(electric + magnetic)
  double rhs = 0.0;  // g_mode
  double difference = 0.0;
};

/// Compares the polarization-q block of the Green-function traces, evaluated
/// in complex arithmetic on the real-frequency forms continued to
/// omega = i xi, against g_mode.
[[nodiscard]] ModeIdentity mode_identity_check(Polarization q, double xi, double k,
                                               const LayerContext& layer, double z);

}  // namespace vfl
