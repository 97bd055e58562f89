#pragma once

// Material response of planar layers on the imaginary frequency axis.
//
// All frequencies are dimensionless, measured in units of a global reference
// frequency Omega_ref (see units.hpp). Every model evaluates to real values
// eps(i xi) >= 1 and mu(i xi) >= 1 for xi > 0.

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace vfl {

class MaterialError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One damped oscillator term  wp^2 / (w0^2 + xi^2 + gamma*xi).
struct Oscillator {
  double resonance = 1.0;  // w0 > 0
  double strength = 1.0;   // wp > 0
  double damping = 0.0;    // gamma >= 0
};

struct ConstantMedium {
  double epsilon = 1.0;
  double mu = 1.0;
};

/// eps(i xi) = 1 + wp^2 / (xi (xi + gamma)); mu from its own oscillator sum.
struct DrudeMetal {
  double plasma = 1.0;
  double damping = 0.0;
  std::vector<Oscillator> mu_oscillators;
};

struct LorentzMedium {
  std::vector<Oscillator> epsilon;
  std::vector<Oscillator> mu;
};

enum class MirrorKind { conducting, permeable };

/// Idealized mirror. Not a response function: reflection is fixed at
/// R^p = +1, R^s = -1 (conducting) or R^p = -1, R^s = +1 (permeable).
struct PerfectMirror {
  MirrorKind kind = MirrorKind::conducting;
};

using DispersionModel =
    std::variant<ConstantMedium, DrudeMetal, LorentzMedium, PerfectMirror>;

struct MaterialResponse {
  double epsilon = 1.0;
  double mu = 1.0;
  double n_squared = 1.0;

  /// Static Drude response: epsilon is +inf and the layer acts as a conductor.
  [[nodiscard]] bool conductor() const noexcept;
};

[[nodiscard]] MaterialResponse make_response(double epsilon, double mu) noexcept;

[[nodiscard]] inline DispersionModel vacuum() { return ConstantMedium{}; }

[[nodiscard]] bool is_perfect_mirror(const DispersionModel& model) noexcept;
[[nodiscard]] std::optional<MirrorKind> perfect_mirror_kind(
    const DispersionModel& model) noexcept;

/// Throws MaterialError describing the first violated parameter constraint.
void validate(const DispersionModel& model);

/// eps, mu at imaginary frequency xi >= 0. Throws MaterialError for a
/// PerfectMirror model or negative xi. Drude at xi == 0 returns +inf epsilon.
[[nodiscard]] MaterialResponse response_at(const DispersionModel& model,
                                           double xi);

/// The xi -> 0 limit of response_at.
[[nodiscard]] MaterialResponse static_response(const DispersionModel& model);

/// Advisory frequency above which the material stops responding:
/// sqrt(w0^2 + wp^2) of the strongest oscillator (wp for Drude). Constant
/// and perfect models have no such scale.
[[nodiscard]] std::optional<double> transparency_frequency(
    const DispersionModel& model) noexcept;

[[nodiscard]] std::string describe(const DispersionModel& model);

}  // namespace vfl
