#include "vfl/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

#include "spectral.hpp"

namespace vfl {
namespace {

using detail::kPi;
using detail::kPi2;

CavityScene prepare(const CavityScene& scene, double d) {
  if (!(d > 0.0) || !std::isfinite(d)) throw SceneError("d must be positive and finite");
  CavityScene s = scene;
  s.gap2 = d;
  const auto v = validate_scene(s);
  s = v.value();
  if (!s.semi_infinite_cavity()) {
    throw AsymptoticError("asymptotic forms assume a semi-infinite cavity");
  }
  return s;
}

bool single_medium(const Mirror& m) { return m.layers.size() == 1; }

void require_single_medium(const CavityScene& s) {
  if (!single_medium(s.mirror2)) {
    throw AsymptoticError("formula needs a single-medium mirror");
  }
}

void require_thick(const CavityScene& s, double d) {
  if (s.slab.thickness < d) {
    throw AsymptoticError("formula needs a slab thicker than the gap");
  }
}

void require_thin(const CavityScene& s, double d) {
  if (!(s.slab.thickness > 0.0) || !(s.slab.thickness < d)) {
    throw AsymptoticError("formula needs a slab thinner than the gap");
  }
  if (is_perfect_mirror(s.slab.material)) {
    throw AsymptoticError("thin-slab forms need a penetrable slab");
  }
}

void require_layer(const CavityScene& s) {
  if (!(s.slab.thickness > 0.0)) throw AsymptoticError("medium layer has zero thickness");
}

bool has_frequency_scale(const Mirror& m) {
  for (const auto& l : m.layers) {
    if (transparency_frequency(l.material)) return true;
  }
  return false;
}

// Nonretarded frequency integrals converge only because the mirror (or the
// slab) stops reflecting above its transparency frequency.
void require_cutoff(const Mirror& m, const Slab* slab = nullptr) {
  if (has_frequency_scale(m)) return;
  if (slab && transparency_frequency(slab->material)) return;
  throw AsymptoticError("nonretarded form diverges without a dispersive mirror");
}

double scene_transparency(const CavityScene& s) {
  std::vector<DispersionModel> materials{s.medium, s.slab.material};
  for (const auto& l : s.mirror2.layers) materials.push_back(l.material);
  const double w = detail::lowest_transparency(materials);
  return std::isfinite(w) ? w : 1.0;
}

double slab_weight(Polarization q, const MaterialResponse& medium, const MaterialResponse& slab) {
  return 1.0 / gamma_ratio(q, medium, slab);
}

// ---- small distances --------------------------------------------------------

struct SmallAtXi {
  MaterialResponse medium;
  Medium slab;
  std::vector<StackLayer> mirror;  // cavity medium first
  double xi = 0.0;
};

struct SmallMode {
  double r, t, bracket, R;
};

SmallMode small_mode(Polarization q, double k, double ds, bool thick, const SmallAtXi& c) {
  const auto rule = KappaRule::quasistatic(k);
  const Medium medium = Medium::of(c.medium);
  SlabCoefficients sc;
  if (thick) {
    const double rho = c.slab.ideal ? ideal_reflection(*c.slab.ideal, q)
                                    : quasistatic_reflection(q, c.medium, c.slab.response);
    sc = slab_from_rho(rho, semi_infinite);
  } else {
    sc = slab_coefficients(q, medium, c.slab, ds, rule);
  }
  return {sc.r, sc.t, sc.bracket, compose_reflection(q, c.mirror, rule)};
}

template <class Kernel>
IntegrationResult integrate_small(const CavityScene& s, const QuadratureSpec& spec,
                                  Kernel kernel) {
  const Stack stack = mirror_stack(s.medium, s.mirror2);
  auto factory = [&](double xi) -> Integrand {
    auto c = std::make_shared<SmallAtXi>();
    c->medium = response_at(s.medium, xi);
    c->slab = evaluate(s.slab.material, xi);
    c->mirror = evaluate_stack(stack, xi);
    c->xi = xi;
    return [c, kernel](double u) { return kernel(u, *c); };
  };
  return integrate_spectral_2d(factory, spec.outer(scene_transparency(s)), spec.inner(1.0));
}

double assisted_weight(const SmallAtXi& c) {
  return c.xi * c.xi * c.medium.mu * (c.medium.n_squared - 1.0);
}

ForceResult scaled(IntegrationResult r, double factor, ForceKind kind) {
  r.value *= factor;
  r.error_estimate *= std::abs(factor);
  return ForceResult::from(r, kind);
}

// ---- large distances --------------------------------------------------------

struct StaticScene {
  MaterialResponse medium;
  Medium slab;
  double ds = 0.0;
  std::vector<StackLayer> mirror;
};

StaticScene static_scene(const CavityScene& s) {
  StaticScene out;
  out.medium = static_response(s.medium);
  if (out.medium.conductor()) throw AsymptoticError("static cavity medium is a conductor");
  out.slab = evaluate_static(s.slab.material);
  out.ds = s.slab.thickness;
  out.mirror = evaluate_stack_static(mirror_stack(s.medium, s.mirror2));
  return out;
}

struct LargeMode {
  double r, bracket, R;
};

LargeMode large_mode(Polarization q, double p, double v, double d, bool thick,
                     const StaticScene& c) {
  const auto rule = KappaRule::radial(p, c.medium.n_squared, v / (2.0 * p * d));
  SlabCoefficients sc;
  if (thick) {
    const double rho = c.slab.ideal ? ideal_reflection(*c.slab.ideal, q)
                                    : radial_coefficients(q, p, Medium::of(c.medium), c.slab).R;
    sc = slab_from_rho(rho, semi_infinite);
  } else {
    sc = slab_coefficients(q, Medium::of(c.medium), c.slab, c.ds, rule);
  }
  return {sc.r, sc.bracket, compose_reflection(q, c.mirror, rule)};
}

template <class Kernel>
IntegrationResult integrate_large(const QuadratureSpec& spec, Kernel kernel) {
  auto factory = [kernel](double p) -> Integrand {
    return [kernel, p](double v) { return kernel(p, v); };
  };
  return integrate_spectral_2d(factory, spec.outer(1.0), spec.inner(1.0), 1.0, 0.0);
}

IntegrationResult radial_integral(const QuadratureSpec& spec,
                                  const std::function<double(double)>& f) {
  HalfLineRule rule = spec.inner(1.0);
  return integrate_halfline([&](double p) { return f(p) / (p * p * p * p); }, 1.0, rule);
}

}  // namespace

std::string_view to_string(Regime r) noexcept {
  switch (r) {
    case Regime::small:
      return "small";
    case Regime::crossover:
      return "crossover";
    case Regime::large:
      return "large";
  }
  return "unknown";
}

Regime RegimeScales::label(double d) const noexcept {
  if (!omega) return Regime::large;
  if (d < lambda / 20.0) return Regime::small;
  if (d > 5.0 * lambda) return Regime::large;
  return Regime::crossover;
}

RegimeScales regime_scales(std::optional<double> omega) noexcept {
  RegimeScales s;
  if (omega && *omega > 0.0 && std::isfinite(*omega)) {
    s.omega = omega;
    s.lambda = 2.0 * kPi / *omega;
  }
  return s;
}

RegimeScales regime_scales(const CavityScene& scene) {
  std::optional<double> omega;
  auto take = [&](const Mirror& m) {
    for (const auto& l : m.layers) {
      if (auto w = transparency_frequency(l.material)) omega = std::max(omega.value_or(0.0), *w);
    }
  };
  take(scene.mirror2);
  if (scene.mirror1) take(*scene.mirror1);
  return regime_scales(omega);
}

ForceResult small_distance_force(SmallKind kind, const CavityScene& scene, double d,
                                 const QuadratureSpec& spec) {
  const CavityScene s = prepare(scene, d);
  const double ds = s.slab.thickness;
  const double inv = 1.0 / (16.0 * kPi2);
  const bool screened = kind == SmallKind::screened || kind == SmallKind::screened_lifshitz;
  require_cutoff(s.mirror2, screened ? &s.slab : nullptr);
  switch (kind) {
    case SmallKind::assisted:
    case SmallKind::assisted_lifshitz: {
      const bool thick = kind == SmallKind::assisted_lifshitz;
      if (thick) {
        require_single_medium(s);
        require_thick(s, d);
      }
      auto kernel = [d, ds, thick](double u, const SmallAtXi& c) {
        const double w = assisted_weight(c);
        if (w == 0.0) return 0.0;
        const double e = std::exp(-u);
        double sum = 0.0;
        for (Polarization q : kPolarizations) {
          const auto m = small_mode(q, u / (2.0 * d), ds, thick, c);
          sum += delta(q) * m.bracket * m.R * e / (1.0 - m.r * m.R * e);
        }
        return w * sum;
      };
      return scaled(integrate_small(s, spec, kernel), inv / d, ForceKind::assisted);
    }
    case SmallKind::screened:
    case SmallKind::screened_lifshitz: {
      const bool thick = kind == SmallKind::screened_lifshitz;
      if (thick) {
        require_single_medium(s);
        require_thick(s, d);
      }
      auto kernel = [d, ds, thick](double u, const SmallAtXi& c) {
        const double e = std::exp(-u);
        double sum = 0.0;
        for (Polarization q : kPolarizations) {
          const auto m = small_mode(q, u / (2.0 * d), ds, thick, c);
          const double w = q == Polarization::tm ? 1.0 / c.medium.epsilon : c.medium.mu;
          sum += w * m.r * m.R * e / (1.0 - m.r * m.R * e);
        }
        return u * u * sum;
      };
      return scaled(integrate_small(s, spec, kernel), inv / (d * d * d), ForceKind::screened);
    }
    case SmallKind::assisted_thin: {
      require_thin(s, d);
      auto kernel = [d](double u, const SmallAtXi& c) {
        const double w = assisted_weight(c);
        if (w == 0.0) return 0.0;
        const auto rule = KappaRule::quasistatic(u / (2.0 * d));
        const double rp = compose_reflection(Polarization::tm, c.mirror, rule);
        const double rs = compose_reflection(Polarization::te, c.mirror, rule);
        const double b = slab_weight(Polarization::tm, c.medium, c.slab.response) * rp -
                         slab_weight(Polarization::te, c.medium, c.slab.response) * rs;
        return w * u * std::exp(-u) * b;
      };
      return scaled(integrate_small(s, spec, kernel), inv * ds / (d * d), ForceKind::assisted);
    }
    case SmallKind::assisted_thin_single: {
      require_thin(s, d);
      require_single_medium(s);
      const Stack stack = mirror_stack(s.medium, s.mirror2);
      auto f = [&](double xi) {
        const auto layers = evaluate_stack(stack, xi);
        const MaterialResponse med = response_at(s.medium, xi);
        const MaterialResponse slab = response_at(s.slab.material, xi);
        const double w = xi * xi * med.mu * (med.n_squared - 1.0);
        if (w == 0.0) return 0.0;
        const auto rule = KappaRule::quasistatic(1.0);
        const double rp = compose_reflection(Polarization::tm, layers, rule);
        const double rs = compose_reflection(Polarization::te, layers, rule);
        return w * (slab_weight(Polarization::tm, med, slab) * rp -
                    slab_weight(Polarization::te, med, slab) * rs);
      };
      const auto r = integrate_halfline(f, 0.0, spec.outer(scene_transparency(s)));
      return scaled(r, inv * ds / (d * d), ForceKind::assisted);
    }
    case SmallKind::medium: {
      require_layer(s);
      auto kernel = [d, ds](double u, const SmallAtXi& c) {
        const double w = assisted_weight(c);
        if (w == 0.0) return 0.0;
        const auto rule = KappaRule::quasistatic(u / (2.0 * d));
        const double rp = compose_reflection(Polarization::tm, c.mirror, rule);
        const double rs = compose_reflection(Polarization::te, c.mirror, rule);
        const double layer = std::isinf(ds) ? 1.0 : -std::expm1(-u * ds / d);
        return w * layer * std::exp(-u) * (rp - rs);
      };
      return scaled(integrate_small(s, spec, kernel), inv / d, ForceKind::medium_layer);
    }
    case SmallKind::medium_thin: {
      require_layer(s);
      if (!(ds < d)) throw AsymptoticError("formula needs a layer thinner than the gap");
      auto kernel = [d](double u, const SmallAtXi& c) {
        const double w = assisted_weight(c);
        if (w == 0.0) return 0.0;
        const auto rule = KappaRule::quasistatic(u / (2.0 * d));
        const double rp = compose_reflection(Polarization::tm, c.mirror, rule);
        const double rs = compose_reflection(Polarization::te, c.mirror, rule);
        return w * u * std::exp(-u) * (rp - rs);
      };
      return scaled(integrate_small(s, spec, kernel), inv * ds / (d * d),
                    ForceKind::medium_layer);
    }
  }
  throw AsymptoticError("unknown small-distance kind");
}

ForceResult large_distance_force(LargeKind kind, const CavityScene& scene, double d,
                                 const QuadratureSpec& spec) {
  const CavityScene s = prepare(scene, d);
  if (kind == LargeKind::assisted_general) {
    const Stack stack = mirror_stack(s.medium, s.mirror2);
    const double ds = s.slab.thickness;
    auto factory = [&](double xi) -> Integrand {
      auto c = std::make_shared<SmallAtXi>();
      c->medium = response_at(s.medium, xi);
      c->slab = evaluate(s.slab.material, xi);
      c->mirror = evaluate_stack(stack, xi);
      c->xi = xi;
      return [c, d, ds](double y) {
        const double w = assisted_weight(*c);
        if (w == 0.0) return 0.0;
        const double nxi = std::sqrt(c->medium.n_squared) * c->xi;
        const double p = 1.0 + y / (2.0 * nxi * d);
        const auto rule = KappaRule::radial(p, c->medium.n_squared, nxi);
        const double e = std::exp(-2.0 * nxi * d - y);
        double sum = 0.0;
        for (Polarization q : kPolarizations) {
          const auto sc = slab_coefficients(q, Medium::of(c->medium), c->slab, ds, rule);
          const double R = compose_reflection(q, c->mirror, rule);
          sum += delta(q) * sc.bracket * R * e / (1.0 - sc.r * R * e);
        }
        return w * sum;
      };
    };
    const double omega = std::min(scene_transparency(s), detail::k_scale(d));
    const auto r = integrate_spectral_2d(factory, spec.outer(omega), spec.inner(1.0));
    return scaled(r, 1.0 / (16.0 * kPi2 * d), ForceKind::assisted);
  }

  const StaticScene c = static_scene(s);
  const double n0 = std::sqrt(c.medium.n_squared);
  const double n03 = n0 * n0 * n0;
  const double eps0 = c.medium.epsilon;
  const double mu0 = c.medium.mu;
  const double d4 = d * d * d * d;
  const double ds = s.slab.thickness;
  const Mirror& mirror = s.mirror2;
  const DispersionModel& medium = s.medium;

  switch (kind) {
    case LargeKind::assisted:
    case LargeKind::assisted_lifshitz: {
      const bool thick = kind == LargeKind::assisted_lifshitz;
      if (thick) {
        require_single_medium(s);
        require_thick(s, d);
      }
      const double pref = mu0 * (n0 * n0 - 1.0) / (128.0 * kPi2 * n03 * d4);
      if (pref == 0.0) return ForceResult{0.0, ForceKind::assisted, 0.0, true};
      auto kernel = [&c, d, thick](double p, double v) {
        const double e = std::exp(-v);
        double sum = 0.0;
        for (Polarization q : kPolarizations) {
          const auto m = large_mode(q, p, v, d, thick, c);
          sum += delta(q) * m.bracket * m.R * e / (1.0 - m.r * m.R * e);
        }
        return v * v * v * sum / (p * p * p * p);
      };
      return scaled(integrate_large(spec, kernel), pref, ForceKind::assisted);
    }
    case LargeKind::screened:
    case LargeKind::screened_lifshitz: {
      const bool thick = kind == LargeKind::screened_lifshitz;
      if (thick) {
        require_single_medium(s);
        require_thick(s, d);
      }
      auto kernel = [&c, d, thick, eps0, mu0](double p, double v) {
        const double e = std::exp(-v);
        double sum = 0.0;
        for (Polarization q : kPolarizations) {
          const auto m = large_mode(q, p, v, d, thick, c);
          const double w = q == Polarization::tm ? 1.0 / eps0 : mu0;
          sum += w * m.r * m.R * e / (1.0 - m.r * m.R * e);
        }
        return v * v * v * sum / (p * p);
      };
      return scaled(integrate_large(spec, kernel), 1.0 / (32.0 * kPi2 * n0 * d4),
                    ForceKind::screened);
    }
    case LargeKind::assisted_thin: {
      require_thin(s, d);
      const MaterialResponse slab = c.slab.response;
      const auto r = radial_integral(spec, [&](double p) {
        return slab_weight(Polarization::tm, c.medium, slab) *
                   static_radial_reflection(Polarization::tm, p, medium, mirror) -
               slab_weight(Polarization::te, c.medium, slab) *
                   static_radial_reflection(Polarization::te, p, medium, mirror);
      });
      const double pref = 3.0 * mu0 * (n0 * n0 - 1.0) * ds / (16.0 * kPi2 * n03 * d4 * d);
      return scaled(r, pref, ForceKind::assisted);
    }
    case LargeKind::medium:
    case LargeKind::medium_thin: {
      require_layer(s);
      const auto r = radial_mirror_integral(mirror, medium, spec.inner(1.0));
      if (kind == LargeKind::medium) {
        const double far = std::isinf(ds) ? 0.0 : 1.0 / std::pow(d + ds, 4);
        const double pref = 3.0 * mu0 * (n0 * n0 - 1.0) / (64.0 * kPi2 * n03) * (1.0 / d4 - far);
        return scaled(r, pref, ForceKind::medium_layer);
      }
      if (!(ds < d)) throw AsymptoticError("formula needs a layer thinner than the gap");
      const double pref = 3.0 * (n0 * n0 - 1.0) * ds / (16.0 * kPi2 * n0 * eps0 * d4 * d);
      return scaled(r, pref, ForceKind::medium_layer);
    }
    case LargeKind::assisted_general:
      break;
  }
  throw AsymptoticError("unknown large-distance kind");
}

ForceResult small_distance_atom_force(const Mirror& mirror, const DispersionModel& medium,
                                      const AtomProperties& atom, double d,
                                      const QuadratureSpec& spec) {
  if (!(d > 0.0) || !std::isfinite(d)) throw SceneError("d must be positive and finite");
  atom.validate();
  const auto vm = validate_mirror(mirror, "mirror");
  require_cutoff(vm.value());
  const Stack stack = mirror_stack(medium, vm.value());
  std::vector<DispersionModel> materials{medium};
  for (const auto& l : mirror.layers) materials.push_back(l.material);
  double omega = std::min(detail::lowest_transparency(materials), atom.transparency());
  if (!std::isfinite(omega)) omega = 1.0;
  auto factory = [&](double xi) -> Integrand {
    auto layers = std::make_shared<std::vector<StackLayer>>(evaluate_stack(stack, xi));
    const double w = xi * xi * (*layers)[0].medium.response.mu *
                     (atom.electric.at(xi) + atom.magnetic.at(xi));
    return [layers, w, d](double u) {
      if (w == 0.0) return 0.0;
      const auto rule = KappaRule::quasistatic(u / (2.0 * d));
      const double rp = compose_reflection(Polarization::tm, *layers, rule);
      const double rs = compose_reflection(Polarization::te, *layers, rule);
      return w * u * std::exp(-u) * (rp - rs);
    };
  };
  const auto r = integrate_spectral_2d(factory, spec.outer(omega), spec.inner(1.0));
  return scaled(r, 1.0 / (4.0 * kPi * d * d), ForceKind::atom_assisted);
}

ForceResult large_distance_atom_force(const Mirror& mirror, const DispersionModel& medium,
                                      const AtomProperties& atom, double d,
                                      const QuadratureSpec& spec) {
  if (!(d > 0.0) || !std::isfinite(d)) throw SceneError("d must be positive and finite");
  atom.validate();
  const auto vm = validate_mirror(mirror, "mirror");
  const MaterialResponse m0 = static_response(medium);
  if (m0.conductor()) throw AsymptoticError("static cavity medium is a conductor");
  const double alpha0 = atom.electric.static_value + atom.magnetic.static_value;
  const auto r = radial_mirror_integral(vm.value(), medium, spec.inner(1.0));
  const double pref =
      3.0 * alpha0 / (4.0 * kPi * std::sqrt(m0.n_squared) * m0.epsilon * std::pow(d, 5));
  return scaled(r, pref, ForceKind::atom_assisted);
}

IdealClosedForms ideal_mirror_closed_forms(double epsilon0, double mu0) {
  if (!(epsilon0 >= 1.0) || !(mu0 >= 1.0) || !std::isfinite(epsilon0) || !std::isfinite(mu0)) {
    throw std::invalid_argument("static epsilon and mu must be finite and >= 1");
  }
  const double root = std::sqrt(mu0 / epsilon0);
  const double inv_n2 = 1.0 / (epsilon0 * mu0);
  return {kPi2 / (45.0 * 32.0) * root * (1.0 - inv_n2),
          kPi2 / (15.0 * 32.0) * root * (1.0 + inv_n2)};
}

double static_radial_reflection(Polarization q, double p, const DispersionModel& medium,
                                const Mirror& mirror) {
  if (!(p >= 1.0)) throw std::invalid_argument("radial coefficients need p >= 1");
  Stack stack = mirror_stack(medium, mirror);
  for (std::size_t i = 1; i + 1 < stack.layers.size(); ++i) stack.layers[i].thickness = 0.0;
  const auto layers = evaluate_stack_static(stack);
  const MaterialResponse& m = layers[0].medium.response;
  if (m.conductor()) throw AsymptoticError("static cavity medium is a conductor");
  return compose_reflection(q, layers, KappaRule::radial(p, m.n_squared, 1.0));
}

IntegrationResult radial_mirror_integral(const Mirror& mirror, const DispersionModel& medium,
                                         const HalfLineRule& rule) {
  const auto vm = validate_mirror(mirror, "mirror");
  const Mirror& m = vm.value();
  return integrate_halfline(
      [&](double p) {
        const double sum = static_radial_reflection(Polarization::tm, p, medium, m) -
                           static_radial_reflection(Polarization::te, p, medium, m);
        return sum / (p * p * p * p);
      },
      1.0, rule);
}

SlopeFit fit_loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("slope fit needs two or more paired points");
  }
  const std::size_t n = x.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || y[i] == 0.0 || !std::isfinite(y[i])) {
      throw std::invalid_argument("slope fit needs positive x and finite nonzero y");
    }
    lx[i] = std::log(x[i]);
    ly[i] = std::log(std::abs(y[i]));
  }
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / static_cast<double>(n);
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("slope fit needs distinct x values");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

std::vector<RegimeRow> regime_report(ReportKind kind, const CavityScene& scene,
                                     std::span<const double> grid, const QuadratureSpec& spec) {
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("distance grid must increase");
  }
  const RegimeScales scales = regime_scales(scene);
  std::vector<RegimeRow> rows;
  rows.reserve(grid.size());
  for (double d : grid) {
    const CavityScene s = prepare(scene, d);
    RegimeRow row;
    row.d = d;
    row.label = scales.label(d);
    auto attempt = [](auto&& f) -> std::optional<ForceResult> {
      try {
        return f();
      } catch (const AsymptoticError&) {
        return std::nullopt;
      }
    };
    switch (kind) {
      case ReportKind::screened:
        row.full = screened_force(s, spec);
        row.small = attempt([&] { return small_distance_force(SmallKind::screened, s, d, spec); });
        row.large = attempt([&] { return large_distance_force(LargeKind::screened, s, d, spec); });
        break;
      case ReportKind::assisted:
        row.full = assisted_force(s, spec);
        row.small = attempt([&] { return small_distance_force(SmallKind::assisted, s, d, spec); });
        row.large = attempt([&] { return large_distance_force(LargeKind::assisted, s, d, spec); });
        break;
      case ReportKind::medium:
        row.full = medium_layer_force(s.mirror2, s.medium, d, s.slab.thickness, spec);
        row.small = attempt([&] { return small_distance_force(SmallKind::medium, s, d, spec); });
        row.large = attempt([&] { return large_distance_force(LargeKind::medium, s, d, spec); });
        break;
    }
    rows.push_back(std::move(row));
  }

  const double nan = std::numeric_limits<double>::quiet_NaN();
  auto windowed = [&](auto value_of) {
    std::vector<double> slopes(rows.size(), nan);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::size_t lo = i == 0 ? 0 : i - 1;
      const std::size_t hi = std::min(rows.size() - 1, i + 1);
      std::vector<double> xs, ys;
      for (std::size_t j = lo; j <= hi; ++j) {
        const auto v = value_of(rows[j]);
        if (!v || *v == 0.0 || !std::isfinite(*v)) {
          xs.clear();
          break;
        }
        xs.push_back(rows[j].d);
        ys.push_back(*v);
      }
      if (xs.size() >= 2) slopes[i] = fit_loglog_slope(xs, ys).slope;
    }
    return slopes;
  };
  const auto sf = windowed([](const RegimeRow& r) { return std::optional(r.full.value); });
  const auto ss = windowed([](const RegimeRow& r) {
    return r.small ? std::optional(r.small->value) : std::nullopt;
  });
  const auto sl = windowed([](const RegimeRow& r) {
    return r.large ? std::optional(r.large->value) : std::nullopt;
  });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].slope_full = sf[i];
    rows[i].slope_small = ss[i];
    rows[i].slope_large = sl[i];
  }
  return rows;
}

}  // namespace vfl
