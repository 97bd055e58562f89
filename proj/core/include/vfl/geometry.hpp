#pragma once

// Planar scenes in the shifted-z convention: every finite layer has a local
// coordinate 0..d, the leftmost semi-infinite layer uses (-inf, 0] and the
// rightmost [0, +inf). The z axis points from mirror 1 towards mirror 2; a
// positive force on the slab pushes it towards mirror 2.

#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vfl/materials.hpp"

namespace vfl {

inline constexpr double semi_infinite = std::numeric_limits<double>::infinity();

class SceneError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Layer {
  DispersionModel material = ConstantMedium{};
  double thickness = semi_infinite;
};

/// A stack ordered from its first (semi-infinite) layer outwards. The last
/// layer is semi-infinite, or a perfect mirror of any thickness.
struct Stack {
  std::vector<Layer> layers;
};

/// Mirror seen from the cavity: layers[0] touches the cavity medium and the
/// last layer terminates the mirror (half-space or perfect mirror).
struct Mirror {
  std::vector<Layer> layers;

  static Mirror perfect(MirrorKind kind = MirrorKind::conducting);
  static Mirror half_space(DispersionModel material);
};

struct Slab {
  DispersionModel material = ConstantMedium{};
  double thickness = 0.0;
};

/// Slab in a planar cavity: mirror1 | gap1 | slab | gap2 | mirror2, the gaps
/// filled with the cavity medium. A missing mirror1 with gap1 = inf describes
/// a semi-infinite cavity (r_1 = 0).
struct CavityScene {
  DispersionModel medium = ConstantMedium{};
  std::optional<Mirror> mirror1;
  double gap1 = semi_infinite;
  Slab slab;
  double gap2 = 1.0;
  Mirror mirror2 = Mirror::perfect();

  [[nodiscard]] bool semi_infinite_cavity() const noexcept;
};

/// Two half-spaces; the force acts on the layer spanning (-a0, an).
struct InterfaceScene {
  DispersionModel left = ConstantMedium{};
  DispersionModel right = ConstantMedium{};
  double a0 = 0.5;
  double an = 0.5;
};

struct Diagnostic {
  std::string field;
  std::string message;
};

template <class Scene>
struct Validated {
  std::optional<Scene> scene;
  std::vector<Diagnostic> diagnostics;

  [[nodiscard]] bool ok() const noexcept { return scene.has_value(); }
  /// Throws SceneError listing every diagnostic when validation failed.
  [[nodiscard]] const Scene& value() const;
};

[[nodiscard]] Validated<CavityScene> validate_scene(const CavityScene& scene);
[[nodiscard]] Validated<InterfaceScene> validate_scene(const InterfaceScene& scene);
[[nodiscard]] Validated<Stack> validate_stack(const Stack& stack);
[[nodiscard]] Validated<Mirror> validate_mirror(const Mirror& mirror,
                                                const std::string& field);

/// Index of a layer inside a stack together with a point in its local
/// shifted-z coordinate.
struct StackPoint {
  std::size_t layer = 0;
  double z = 0.0;
};

/// The two faces of the slab, each expressed as a point inside the stack
/// that contains the neighbouring gap. For a finite slab both stacks are the
/// same full stack; a semi-infinite slab splits the scene in two.
struct SlabFaces {
  Stack left_stack;
  StackPoint left;   // gap1 side, at the slab surface
  Stack right_stack;
  StackPoint right;  // gap2 side, at the slab surface
};

/// Expects a validated scene.
[[nodiscard]] SlabFaces slab_faces(const CavityScene& scene);

/// Full layer stack of a cavity scene with a finite slab.
[[nodiscard]] Stack cavity_stack(const CavityScene& scene);

[[nodiscard]] Stack interface_stack(const InterfaceScene& scene);

/// Nearest mirror direction seen from the slab: +1 (mirror 2), -1 (mirror 1),
/// 0 when both are equally far.
[[nodiscard]] int nearest_mirror_direction(const CavityScene& scene) noexcept;

template <class Scene>
const Scene& Validated<Scene>::value() const {
  if (!scene) {
    std::string msg = "invalid scene:";
    for (const auto& d : diagnostics) msg += " [" + d.field + ": " + d.message + "]";
    throw SceneError(msg);
  }
  return *scene;
}

}  // namespace vfl
