#include "vfl/geometry.hpp"

#include <cmath>

namespace vfl {
namespace {

bool is_vacuum(const DispersionModel& model) {
  if (const auto* c = std::get_if<ConstantMedium>(&model)) {
    return c->epsilon == 1.0 && c->mu == 1.0;
  }
  if (const auto* l = std::get_if<LorentzMedium>(&model)) {
    return l->epsilon.empty() && l->mu.empty();
  }
  return false;
}

void check_material(const DispersionModel& model, const std::string& field,
                    std::vector<Diagnostic>& out) {
  try {
    validate(model);
  } catch (const MaterialError& e) {
    out.push_back({field, e.what()});
  }
}

void check_thickness(double d, const std::string& field,
                     std::vector<Diagnostic>& out) {
  if (std::isnan(d)) {
    out.push_back({field, "thickness is not a number"});
  } else if (d < 0.0) {
    out.push_back({field, "negative thickness"});
  }
}

}  // namespace

Mirror Mirror::perfect(MirrorKind kind) {
  return Mirror{{Layer{PerfectMirror{kind}, semi_infinite}}};
}

Mirror Mirror::half_space(DispersionModel material) {
  return Mirror{{Layer{std::move(material), semi_infinite}}};
}

bool CavityScene::semi_infinite_cavity() const noexcept {
  return !mirror1.has_value() || std::isinf(gap1);
}

Validated<Mirror> validate_mirror(const Mirror& mirror, const std::string& field) {
  Validated<Mirror> result;
  auto& diag = result.diagnostics;
  if (mirror.layers.empty()) {
    diag.push_back({field, "mirror has no layers"});
    return result;
  }
  Mirror normalized;
  for (std::size_t i = 0; i < mirror.layers.size(); ++i) {
    const auto& layer = mirror.layers[i];
    const std::string name = field + ".layers[" + std::to_string(i) + "]";
    check_material(layer.material, name, diag);
    check_thickness(layer.thickness, name, diag);
    const bool last = i + 1 == mirror.layers.size();
    const bool perfect = is_perfect_mirror(layer.material);
    if (!last && std::isinf(layer.thickness) && !perfect) {
      diag.push_back({name, "semi-infinite interior layer"});
    }
    if (last && !perfect && !std::isinf(layer.thickness)) {
      diag.push_back({name, "mirror must end in a half-space or a perfect mirror"});
    }
    if (layer.thickness == 0.0 && !last) continue;  // collapses away
    if (perfect) {
      normalized.layers.push_back({layer.material, semi_infinite});
      break;  // nothing behind an ideal mirror is visible
    }
    normalized.layers.push_back(layer);
  }
  if (diag.empty()) result.scene = std::move(normalized);
  return result;
}

Validated<Stack> validate_stack(const Stack& stack) {
  Validated<Stack> result;
  auto& diag = result.diagnostics;
  if (stack.layers.empty()) {
    diag.push_back({"stack", "empty stack"});
    return result;
  }
  Stack normalized;
  const std::size_t n = stack.layers.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& layer = stack.layers[i];
    const std::string name = "stack.layers[" + std::to_string(i) + "]";
    check_material(layer.material, name, diag);
    check_thickness(layer.thickness, name, diag);
    const bool end = i == 0 || i + 1 == n;
    const bool perfect = is_perfect_mirror(layer.material);
    if (end && !perfect && !std::isinf(layer.thickness)) {
      diag.push_back({name, "outermost layers must be semi-infinite"});
    }
    if (!end && std::isinf(layer.thickness)) {
      diag.push_back({name, "semi-infinite interior layer"});
    }
    if (!end && layer.thickness == 0.0) continue;
    normalized.layers.push_back(layer);
  }
  if (diag.empty()) result.scene = std::move(normalized);
  return result;
}

Validated<CavityScene> validate_scene(const CavityScene& scene) {
  Validated<CavityScene> result;
  auto& diag = result.diagnostics;
  CavityScene s = scene;

  check_material(s.medium, "medium", diag);
  if (is_perfect_mirror(s.medium)) {
    diag.push_back({"medium", "cavity medium cannot be a perfect mirror"});
  }

  check_thickness(s.gap2, "gap2", diag);
  if (s.gap2 == 0.0) diag.push_back({"gap2", "gap2 must be positive"});
  check_thickness(s.gap1, "gap1", diag);
  if (std::isinf(s.gap2)) {
    diag.push_back({"gap2", std::isinf(s.gap1) ? "both gaps infinite"
                                               : "gap2 must be finite"});
  }

  if (std::isinf(s.gap1) || !s.mirror1) {
    s.mirror1.reset();
    s.gap1 = semi_infinite;
  } else {
    auto m1 = validate_mirror(*s.mirror1, "mirror1");
    diag.insert(diag.end(), m1.diagnostics.begin(), m1.diagnostics.end());
    if (m1.ok()) s.mirror1 = *m1.scene;
  }
  auto m2 = validate_mirror(s.mirror2, "mirror2");
  diag.insert(diag.end(), m2.diagnostics.begin(), m2.diagnostics.end());
  if (m2.ok()) s.mirror2 = *m2.scene;

  check_material(s.slab.material, "slab", diag);
  check_thickness(s.slab.thickness, "slab.thickness", diag);
  if (std::isinf(s.slab.thickness) && !s.semi_infinite_cavity()) {
    diag.push_back({"slab.thickness", "semi-infinite interior layer"});
  }
  if (s.slab.thickness == 0.0) {
    s.slab = Slab{s.medium, 0.0};
  } else if (is_perfect_mirror(s.slab.material) && s.semi_infinite_cavity()) {
    s.slab.thickness = semi_infinite;
  }

  if (diag.empty()) result.scene = std::move(s);
  return result;
}

Validated<InterfaceScene> validate_scene(const InterfaceScene& scene) {
  Validated<InterfaceScene> result;
  auto& diag = result.diagnostics;
  check_material(scene.left, "left", diag);
  check_material(scene.right, "right", diag);
  if (is_perfect_mirror(scene.left) || is_perfect_mirror(scene.right)) {
    diag.push_back({"interface", "interface media cannot be perfect mirrors"});
  }
  check_thickness(scene.a0, "a0", diag);
  check_thickness(scene.an, "an", diag);
  if (std::isinf(scene.a0) || std::isinf(scene.an)) {
    diag.push_back({"interface", "layer depths must be finite"});
  }
  if (!(scene.a0 + scene.an > 0.0)) {
    diag.push_back({"interface", "layer around the interface has zero thickness"});
  }
  // A zero depth into a polarizable medium makes the k-integral diverge.
  if (scene.a0 == 0.0 && !is_vacuum(scene.left)) {
    diag.push_back({"a0", "depth must be positive inside a non-vacuum medium"});
  }
  if (scene.an == 0.0 && !is_vacuum(scene.right)) {
    diag.push_back({"an", "depth must be positive inside a non-vacuum medium"});
  }
  if (diag.empty()) result.scene = scene;
  return result;
}

Stack cavity_stack(const CavityScene& scene) {
  if (std::isinf(scene.slab.thickness)) {
    throw SceneError("a semi-infinite slab splits the scene into two stacks");
  }
  Stack stack;
  if (scene.semi_infinite_cavity()) {
    stack.layers.push_back({scene.medium, semi_infinite});
  } else {
    const auto& m1 = scene.mirror1->layers;
    for (auto it = m1.rbegin(); it != m1.rend(); ++it) stack.layers.push_back(*it);
    stack.layers.push_back({scene.medium, scene.gap1});
  }
  stack.layers.push_back({scene.slab.material, scene.slab.thickness});
  stack.layers.push_back({scene.medium, scene.gap2});
  for (const auto& l : scene.mirror2.layers) stack.layers.push_back(l);
  return stack;
}

SlabFaces slab_faces(const CavityScene& scene) {
  SlabFaces faces;
  if (std::isinf(scene.slab.thickness)) {
    faces.left_stack.layers = {{scene.medium, semi_infinite},
                               {scene.slab.material, semi_infinite}};
    faces.left = {0, 0.0};
    faces.right_stack.layers.push_back({scene.slab.material, semi_infinite});
    faces.right_stack.layers.push_back({scene.medium, scene.gap2});
    for (const auto& l : scene.mirror2.layers) faces.right_stack.layers.push_back(l);
    faces.right = {1, 0.0};
    return faces;
  }
  Stack stack = cavity_stack(scene);
  const std::size_t gap1 =
      scene.semi_infinite_cavity() ? 0 : scene.mirror1->layers.size();
  faces.left = {gap1, scene.semi_infinite_cavity() ? 0.0 : scene.gap1};
  faces.right = {gap1 + 2, 0.0};
  faces.left_stack = stack;
  faces.right_stack = std::move(stack);
  return faces;
}

Stack interface_stack(const InterfaceScene& scene) {
  return Stack{{{scene.left, semi_infinite}, {scene.right, semi_infinite}}};
}

int nearest_mirror_direction(const CavityScene& scene) noexcept {
  if (scene.semi_infinite_cavity()) return +1;
  if (scene.gap2 < scene.gap1) return +1;
  if (scene.gap1 < scene.gap2) return -1;
  return 0;
}

}  // namespace vfl
