#include "vfl/forces.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "spectral.hpp"

namespace vfl {
namespace {

using detail::kPi;
using detail::kPi2;

struct CavityAtXi {
  MaterialResponse medium;
  Medium slab;
  double ds = 0.0;
  std::vector<StackLayer> mirror1;  // cavity medium first
  std::vector<StackLayer> mirror2;
  double d1 = semi_infinite;
  double d2 = 1.0;
  bool has_mirror1 = false;
};

CavityAtXi evaluate_cavity(const CavityScene& s, double xi) {
  CavityAtXi c;
  c.medium = response_at(s.medium, xi);
  c.slab = evaluate(s.slab.material, xi);
  c.ds = s.slab.thickness;
  c.d2 = s.gap2;
  c.mirror2 = evaluate_stack(mirror_stack(s.medium, s.mirror2), xi);
  c.has_mirror1 = !s.semi_infinite_cavity();
  if (c.has_mirror1) {
    c.d1 = s.gap1;
    c.mirror1 = evaluate_stack(mirror_stack(s.medium, *s.mirror1), xi);
  }
  return c;
}

ModeCoefficients mode_at(Polarization q, double xi, double k, const CavityAtXi& c) {
  const auto rule = KappaRule::exact(xi, k);
  const Medium medium = Medium::of(c.medium);
  ModeCoefficients m;
  m.kappa = rule(c.medium.n_squared);
  m.rho = c.slab.ideal ? ideal_reflection(*c.slab.ideal, q)
                       : interface_r(q, m.kappa, rule(c.slab.response.n_squared), c.medium,
                                     c.slab.response);
  const auto sc = slab_coefficients(q, medium, c.slab, c.ds, rule);
  m.r = sc.r;
  m.t = sc.t;
  m.bracket = sc.bracket;
  m.r2 = compose_reflection(q, c.mirror2, rule);
  m.e2 = std::exp(-2.0 * m.kappa * c.d2);
  if (c.has_mirror1) {
    m.r1 = compose_reflection(q, c.mirror1, rule);
    m.e1 = std::exp(-2.0 * m.kappa * c.d1);
  }
  const double a1 = m.r1 * m.e1;
  const double a2 = m.r2 * m.e2;
  m.D1 = 1.0 - (m.r + m.t * m.t * a2 / (1.0 - m.r * a2)) * a1;
  m.D2 = 1.0 - (m.r + m.t * m.t * a1 / (1.0 - m.r * a1)) * a2;
  m.N = 1.0 - m.r * (a1 + a2) + (m.r * m.r - m.t * m.t) * a1 * a2;
  return m;
}

struct Scales {
  double length;
  double omega;
};

Scales cavity_scales(const CavityScene& s) {
  std::vector<DispersionModel> materials{s.medium, s.slab.material};
  for (const auto& l : s.mirror2.layers) materials.push_back(l.material);
  double length = s.gap2;
  if (!s.semi_infinite_cavity()) {
    for (const auto& l : s.mirror1->layers) materials.push_back(l.material);
    if (s.gap1 > 0.0) length = std::min(length, s.gap1);
  }
  return {length, detail::lowest_transparency(materials)};
}

// Integrates kernel(xi, k, cavity) over the quarter plane.
template <class Kernel>
IntegrationResult integrate_cavity(const CavityScene& s, const QuadratureSpec& spec,
                                   Kernel kernel) {
  const auto sc = cavity_scales(s);
  auto factory = [&](double xi) -> Integrand {
    auto c = std::make_shared<CavityAtXi>(evaluate_cavity(s, xi));
    return [c, xi, kernel](double k) { return kernel(xi, k, *c); };
  };
  return integrate_spectral_2d(factory, spec.outer(detail::xi_scale(sc.length, sc.omega)),
                               spec.inner(detail::k_scale(sc.length)));
}

CavityScene checked(const CavityScene& scene) { return validate_scene(scene).value(); }

Mirror checked(const Mirror& mirror) { return validate_mirror(mirror, "mirror").value(); }

void check_distance(double d, const char* name) {
  if (!(d > 0.0) || !std::isfinite(d)) {
    throw SceneError(std::string(name) + " must be positive and finite");
  }
}

// Mirror reflection over the (xi, k) quarter plane with a per-xi weight.
template <class Kernel>
IntegrationResult integrate_mirror(const DispersionModel& medium, const Mirror& mirror,
                                   double d, double omega, const QuadratureSpec& spec,
                                   Kernel kernel) {
  const Stack stack = mirror_stack(medium, mirror);
  std::vector<DispersionModel> materials{medium};
  for (const auto& l : mirror.layers) materials.push_back(l.material);
  omega = std::min(omega, detail::lowest_transparency(materials));
  auto factory = [&](double xi) -> Integrand {
    auto layers = std::make_shared<std::vector<StackLayer>>(evaluate_stack(stack, xi));
    return [layers, xi, kernel](double k) {
      const auto rule = KappaRule::exact(xi, k);
      const MaterialResponse& m = (*layers)[0].medium.response;
      const double rp = compose_reflection(Polarization::tm, *layers, rule);
      const double rs = compose_reflection(Polarization::te, *layers, rule);
      return kernel(xi, k, rule(m.n_squared), m, rp, rs);
    };
  };
  return integrate_spectral_2d(factory, spec.outer(detail::xi_scale(d, omega)),
                               spec.inner(detail::k_scale(d)));
}

}  // namespace

std::string_view to_string(ForceKind kind) noexcept {
  switch (kind) {
    case ForceKind::slab_total:
      return "slab";
    case ForceKind::screened:
      return "screened";
    case ForceKind::assisted:
      return "assisted";
    case ForceKind::medium_layer:
      return "medium";
    case ForceKind::atom_assisted:
      return "atom";
    case ForceKind::atom_vacuum:
      return "atom-vacuum";
    case ForceKind::interface:
      return "interface";
    case ForceKind::minkowski:
      return "minkowski";
  }
  return "unknown";
}

Stack mirror_stack(const DispersionModel& medium, const Mirror& mirror) {
  Stack s;
  s.layers.push_back({medium, semi_infinite});
  for (const auto& l : mirror.layers) s.layers.push_back(l);
  return s;
}

ModeCoefficients cavity_mode(Polarization q, double xi, double k, const CavityScene& scene) {
  (void)kappa(xi, k, 1.0);
  return mode_at(q, xi, k, evaluate_cavity(scene, xi));
}

ForceResult screened_force(const CavityScene& scene, const QuadratureSpec& spec) {
  const CavityScene s = checked(scene);
  auto kernel = [](double xi, double k, const CavityAtXi& c) {
    double sum = 0.0;
    for (Polarization q : kPolarizations) {
      const auto m = mode_at(q, xi, k, c);
      const double w = q == Polarization::tm ? 1.0 / c.medium.epsilon : c.medium.mu;
      sum += w * m.r * (m.r2 * m.e2 - m.r1 * m.e1) / m.N;
    }
    const double kap = std::sqrt(c.medium.n_squared * xi * xi + k * k);
    return k * kap * sum / (2.0 * kPi2);
  };
  return ForceResult::from(integrate_cavity(s, spec, kernel), ForceKind::screened);
}

ForceResult assisted_force(const CavityScene& scene, const QuadratureSpec& spec) {
  const CavityScene s = checked(scene);
  auto kernel = [](double xi, double k, const CavityAtXi& c) {
    const double weight = xi * xi * c.medium.mu * (c.medium.n_squared - 1.0);
    if (weight == 0.0) return 0.0;
    double sum = 0.0;
    for (Polarization q : kPolarizations) {
      const auto m = mode_at(q, xi, k, c);
      sum += m.bracket * delta(q) * (m.r2 * m.e2 - m.r1 * m.e1) / m.N;
    }
    const double kap = std::sqrt(c.medium.n_squared * xi * xi + k * k);
    if (kap == 0.0) return 0.0;
    return weight * k / kap * sum / (8.0 * kPi2);
  };
  return ForceResult::from(integrate_cavity(s, spec, kernel), ForceKind::assisted);
}

namespace {

ForceResult slab_stress_force(const CavityScene& scene, StressMode mode, ForceKind kind,
                              const QuadratureSpec& spec) {
  const CavityScene s = checked(scene);
  const SlabFaces faces = slab_faces(s);
  return ForceResult::from(
      stress_difference(faces.right_stack, faces.right, faces.left_stack, faces.left, mode,
                        spec),
      kind);
}

}  // namespace

CavitySplit cavity_force_split(const CavityScene& scene, const QuadratureSpec& spec) {
  CavitySplit out;
  out.screened = screened_force(scene, spec);
  out.assisted = assisted_force(scene, spec);
  out.total = slab_stress_force(scene, StressMode::lorentz, ForceKind::slab_total, spec);
  return out;
}

ForceResult slab_force(const CavityScene& scene, const QuadratureSpec& spec) {
  return slab_stress_force(scene, StressMode::lorentz, ForceKind::slab_total, spec);
}

ForceResult minkowski_slab_force(const CavityScene& scene, const QuadratureSpec& spec) {
  return slab_stress_force(scene, StressMode::minkowski, ForceKind::minkowski, spec);
}

ForceResult medium_assisted_semiinfinite(const Mirror& mirror, const DispersionModel& medium,
                                         const Slab& slab, double d,
                                         const QuadratureSpec& spec) {
  check_distance(d, "d");
  CavityScene scene;
  scene.medium = medium;
  scene.slab = slab;
  scene.gap2 = d;
  scene.mirror2 = mirror;
  return assisted_force(scene, spec);
}

ForceResult medium_layer_force(const Mirror& mirror, const DispersionModel& medium, double d,
                               double ds, const QuadratureSpec& spec) {
  check_distance(d, "d");
  if (!(ds > 0.0)) throw SceneError("ds must be positive");
  const Mirror m = checked(mirror);
  validate(medium);
  auto kernel = [ds, d](double xi, double k, double kap, const MaterialResponse& med,
                        double rp, double rs) {
    const double weight = xi * xi * med.mu * (med.n_squared - 1.0);
    if (weight == 0.0 || kap == 0.0) return 0.0;
    const double layer = std::isinf(ds) ? 1.0 : -std::expm1(-2.0 * kap * ds);
    return weight * k / kap * layer * std::exp(-2.0 * kap * d) * (rp - rs) / (8.0 * kPi2);
  };
  return ForceResult::from(
      integrate_mirror(medium, m, d, detail::kInf, spec, kernel), ForceKind::medium_layer);
}

double Polarizability::at(double xi) const noexcept {
  if (std::isinf(resonance)) return static_value;
  const double w2 = resonance * resonance;
  return static_value * w2 / (w2 + xi * xi);
}

void AtomProperties::validate() const {
  for (const Polarizability* p : {&electric, &magnetic}) {
    if (!(p->static_value >= 0.0) || !std::isfinite(p->static_value)) {
      throw std::invalid_argument("polarizability must be finite and non-negative");
    }
    if (!(p->resonance > 0.0)) throw std::invalid_argument("atomic resonance must be positive");
  }
}

double AtomProperties::transparency() const noexcept {
  double w = detail::kInf;
  if (electric.static_value > 0.0) w = std::min(w, electric.resonance);
  if (magnetic.static_value > 0.0) w = std::min(w, magnetic.resonance);
  return w;
}

ForceResult atom_force(const Mirror& mirror, const DispersionModel& medium,
                       const AtomProperties& atom, double d, const QuadratureSpec& spec) {
  check_distance(d, "d");
  atom.validate();
  const Mirror m = checked(mirror);
  validate(medium);
  auto kernel = [atom, d](double xi, double k, double kap, const MaterialResponse& med,
                          double rp, double rs) {
    const double alpha = atom.electric.at(xi) + atom.magnetic.at(xi);
    return xi * xi * med.mu * alpha * k * std::exp(-2.0 * kap * d) * (rp - rs) / kPi;
  };
  return ForceResult::from(integrate_mirror(medium, m, d, atom.transparency(), spec, kernel),
                           ForceKind::atom_assisted);
}

ForceResult atom_force_vacuum(const Mirror& mirror, const AtomProperties& atom, double d,
                              const QuadratureSpec& spec) {
  check_distance(d, "d");
  atom.validate();
  const Mirror m = checked(mirror);
  auto kernel = [atom, d](double xi, double k, double kap, const MaterialResponse&, double rp,
                          double rs) {
    const double ae = atom.electric.at(xi);
    const double am = atom.magnetic.at(xi);
    const double x2 = xi * xi;
    const double k2 = 2.0 * kap * kap;
    const double bracket = (ae * (k2 - x2) - am * x2) * rp + (am * (k2 - x2) - ae * x2) * rs;
    return k * std::exp(-2.0 * kap * d) * bracket / kPi;
  };
  return ForceResult::from(
      integrate_mirror(vacuum(), m, d, atom.transparency(), spec, kernel),
      ForceKind::atom_vacuum);
}

}  // namespace vfl
