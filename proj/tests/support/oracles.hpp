#pragma once

// Reference implementations used only by tests.

#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "vfl/fresnel.hpp"
#include "vfl/geometry.hpp"

namespace vfl::oracle {

struct PlainLayer {
  double epsilon = 1.0;
  double mu = 1.0;
  double thickness = 0.0;                   // ignored for the first and last layer
  std::optional<MirrorKind> ideal;          // only allowed for the last layer
};

/// Reflection seen from layers[0] by propagating (psi, psi'/w) through the
/// stack from the last layer, with w = epsilon (TM) or mu (TE).
[[nodiscard]] double transfer_matrix_reflection(Polarization q, double xi, double k,
                                                const std::vector<PlainLayer>& layers);

/// Brute-force integral over [0, inf)^2 with x = s t / (1 - t) in both
/// variables and an n x n midpoint grid in t.
[[nodiscard]] double mapped_trapezoid_2d(const std::function<double(double, double)>& g,
                                         double outer_scale, double inner_scale, int n);

/// Random passive Lorentz medium with one or two oscillators.
[[nodiscard]] LorentzMedium random_lorentz(std::mt19937& rng);

/// A stack of two to four layers and its plain values at xi. The last layer
/// is a perfect mirror with probability 1/4 when allowed.
struct RandomStack {
  Stack stack;
  std::vector<PlainLayer> plain;
};

[[nodiscard]] RandomStack random_stack(std::mt19937& rng, double xi, bool allow_ideal);

}  // namespace vfl::oracle
