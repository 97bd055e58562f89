#pragma once

// Fresnel coefficients on the imaginary frequency axis. With beta = i*kappa
// every coefficient is real, so nothing here touches complex arithmetic.

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "vfl/geometry.hpp"
#include "vfl/materials.hpp"

namespace vfl {

enum class Polarization { tm, te };  // p and s

inline constexpr std::array<Polarization, 2> kPolarizations{Polarization::tm,
                                                            Polarization::te};

/// +1 for TM, -1 for TE.
[[nodiscard]] constexpr double delta(Polarization q) noexcept {
  return q == Polarization::tm ? 1.0 : -1.0;
}

/// Reflection of an ideal mirror: +delta for a conductor, -delta for an
/// infinitely permeable mirror.
[[nodiscard]] constexpr double ideal_reflection(MirrorKind kind,
                                                Polarization q) noexcept {
  return kind == MirrorKind::conducting ? delta(q) : -delta(q);
}

/// A layer material evaluated at one imaginary frequency.
struct Medium {
  MaterialResponse response;
  std::optional<MirrorKind> ideal;

  [[nodiscard]] static Medium of(const MaterialResponse& r) { return {r, std::nullopt}; }
};

[[nodiscard]] Medium evaluate(const DispersionModel& model, double xi);
[[nodiscard]] Medium evaluate_static(const DispersionModel& model);

/// How the normal wave number of a layer follows from its n^2.
class KappaRule {
 public:
  /// kappa = sqrt(n^2 xi^2 + k^2).
  static KappaRule exact(double xi, double k) noexcept;
  /// kappa = k for every layer (nonretarded limit).
  static KappaRule quasistatic(double k) noexcept;
  /// kappa = scale * sqrt(p^2 - 1 + n^2 / n_ref^2), the (xi, p) representation
  /// with scale = n_ref * xi.
  static KappaRule radial(double p, double n_ref_squared, double scale) noexcept;

  [[nodiscard]] double operator()(double n_squared) const noexcept;

 private:
  enum class Kind { exact, quasistatic, radial };
  Kind kind_ = Kind::exact;
  double a_ = 0.0;  // xi^2, unused, or p^2 - 1
  double b_ = 0.0;  // k^2, k, or 1/n_ref^2
  double c_ = 1.0;  // radial scale
};

/// kappa = sqrt(n^2 xi^2 + k^2). Throws std::invalid_argument when
/// xi = k = 0 or either is negative.
[[nodiscard]] double kappa(double xi, double k, double n_squared);

/// Single-interface reflection from layer i into layer j for given normal
/// wave numbers: (w_j kappa_i - w_i kappa_j) / (w_j kappa_i + w_i kappa_j) with
/// w = epsilon (TM) or mu (TE). Handles conductors and infinite kappa.
[[nodiscard]] double interface_r(Polarization q, double kappa_i, double kappa_j,
                                 const MaterialResponse& i,
                                 const MaterialResponse& j) noexcept;

struct InterfaceCoefficients {
  double r = 0.0;
  double t = 1.0;
};

/// r_ij and t_ij at (xi, k). Throws std::invalid_argument if the incidence
/// medium is a perfect mirror.
[[nodiscard]] InterfaceCoefficients interface_rt(Polarization q, double xi,
                                                 double k, const Medium& i,
                                                 const Medium& j);
[[nodiscard]] InterfaceCoefficients interface_rt(Polarization q, double xi,
                                                 double k,
                                                 const DispersionModel& i,
                                                 const DispersionModel& j);

struct StackLayer {
  Medium medium;
  double thickness = semi_infinite;
};

/// Evaluates every layer of a stack at xi.
[[nodiscard]] std::vector<StackLayer> evaluate_stack(const Stack& stack, double xi);
[[nodiscard]] std::vector<StackLayer> evaluate_stack_static(const Stack& stack);

/// Reflection coefficient of the stack seen from layers[0], built with the
/// recurrence r_{i/j/k} = r_ij + t_ij t_ji r_jk e / (1 - r_ji r_jk e),
/// e = exp(-2 kappa_j d_j). Composition stops at the first ideal mirror.
/// Throws std::invalid_argument on an empty stack or an ideal incidence layer.
[[nodiscard]] double compose_reflection(Polarization q,
                                        std::span<const StackLayer> stack,
                                        const KappaRule& rule);

/// Same, walking the stack from its last layer towards the first.
[[nodiscard]] double compose_reflection_reversed(Polarization q,
                                                 std::span<const StackLayer> stack,
                                                 const KappaRule& rule);

/// Convenience wrapper: evaluates the stack at xi and composes at (xi, k).
[[nodiscard]] double compose_reflection(Polarization q, double xi, double k,
                                        const Stack& stack);

/// Whole-slab coefficients for a slab embedded in a homogeneous medium.
struct SlabCoefficients {
  double r = 0.0;
  double t = 1.0;
  double bracket = 0.0;  // (1 + r)^2 - t^2, evaluated without cancellation
};

/// Slab coefficients from the single-interface medium-slab coefficient rho and
/// the slab's optical thickness kappa_s * d_s. Infinite thickness gives
/// (rho, 0).
[[nodiscard]] SlabCoefficients slab_from_rho(double rho,
                                             double kappa_s_thickness) noexcept;

/// Slab coefficients for any kappa representation.
[[nodiscard]] SlabCoefficients slab_coefficients(Polarization q,
                                                 const Medium& medium,
                                                 const Medium& slab,
                                                 double thickness,
                                                 const KappaRule& rule) noexcept;

[[nodiscard]] SlabCoefficients slab_rt(Polarization q, double xi, double k,
                                       const DispersionModel& medium,
                                       const DispersionModel& slab,
                                       double thickness);

struct ThinSlabCoefficients {
  double r_lin = 0.0;        // 2 rho kappa_s d_s / (1 - rho^2)
  double bracket_lin = 0.0;  // 2 kappa d_s / gamma^q
};

/// First order in kappa_s d_s.
[[nodiscard]] ThinSlabCoefficients thin_slab_rt(Polarization q, double xi,
                                                double k,
                                                const DispersionModel& medium,
                                                const DispersionModel& slab,
                                                double thickness);

/// gamma^p = eps/eps_s, gamma^s = mu/mu_s.
[[nodiscard]] double gamma_ratio(Polarization q, const MaterialResponse& medium,
                                 const MaterialResponse& slab) noexcept;

struct RadialCoefficients {
  double s = 0.0;  // sqrt(p^2 - 1 + n_l^2/n^2)
  double R = 0.0;  // reflection at (0, p) of a half-space of that layer
};

/// Static (xi -> 0) large-distance coefficients of a half-space `layer` seen
/// from `medium`. A conducting (static Drude) layer gives R^p = 1 and the TE
/// value from its finite mu. Throws std::invalid_argument for p < 1.
[[nodiscard]] RadialCoefficients radial_coefficients(Polarization q, double p,
                                                     const Medium& medium,
                                                     const Medium& layer);

/// Nonretarded single-interface value (w_m - w)/(w_m + w).
[[nodiscard]] double quasistatic_reflection(Polarization q,
                                            const MaterialResponse& medium,
                                            const MaterialResponse& layer) noexcept;

}  // namespace vfl
