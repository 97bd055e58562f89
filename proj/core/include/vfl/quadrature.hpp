#pragma once

// Globally adaptive Gauss-Kronrod (10/21) integration over finite intervals
// and half-lines, plus the nested (xi, k) driver used by every force kernel.
//
// Non-convergence is a reported state, never an exception.

#include <functional>
#include <limits>

namespace vfl {

enum class HalfLineMap {
  rational,     // x = lower + scale * t / (1 - t)
  exponential,  // x = lower - scale * ln(1 - t)
};

enum class QuadratureStatus { converged, max_subdivisions, non_finite };

struct HalfLineRule {
  double rel_tol = 1e-8;
  double abs_tol = 0.0;
  int max_subdivisions = 200;
  HalfLineMap map = HalfLineMap::rational;
  double scale = 1.0;
};

struct IntegrationResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
  bool converged = false;
  QuadratureStatus status = QuadratureStatus::converged;
  /// Abscissa of the offending sample when status == non_finite.
  double failure_location = std::numeric_limits<double>::quiet_NaN();
};

/// Tolerances for the nested spectral integrals. Scales of zero ask the
/// caller (force kernels) to pick scales from the geometry.
struct QuadratureSpec {
  double rel_tol_outer = 1e-6;
  double rel_tol_inner = 1e-8;
  double abs_tol = 0.0;
  int max_subdivisions = 200;
  HalfLineMap map = HalfLineMap::rational;
  double outer_scale = 0.0;
  double inner_scale = 0.0;

  [[nodiscard]] HalfLineRule outer(double scale_hint) const noexcept;
  [[nodiscard]] HalfLineRule inner(double scale_hint) const noexcept;
};

using Integrand = std::function<double(double)>;

[[nodiscard]] IntegrationResult integrate_interval(const Integrand& f, double a,
                                                   double b,
                                                   const HalfLineRule& rule);

/// Integral of f over [lower, inf). The integrand must decay (exponentially or
/// as an integrable power).
[[nodiscard]] IntegrationResult integrate_halfline(const Integrand& f,
                                                   double lower,
                                                   const HalfLineRule& rule);

/// Returns the inner integrand k -> g(xi, k) for one outer abscissa xi, so
/// per-frequency work (material evaluation) happens once per xi.
using InnerFactory = std::function<Integrand(double xi)>;

/// Integral over xi in [outer_lower, inf) of the integral over k in
/// [inner_lower, inf). The error estimate adds the outer estimate and the
/// outer integral of the inner estimates.
[[nodiscard]] IntegrationResult integrate_spectral_2d(
    const InnerFactory& factory, const HalfLineRule& outer,
    const HalfLineRule& inner, double outer_lower = 0.0, double inner_lower = 0.0);

[[nodiscard]] IntegrationResult integrate_spectral_2d(
    const std::function<double(double, double)>& g, const HalfLineRule& outer,
    const HalfLineRule& inner);

}  // namespace vfl
