#include "vfl/stress.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <stdexcept>
#include <vector>

#include "spectral.hpp"

namespace vfl {
namespace {

using detail::kPi2;

struct Exponentials {
  double d = 0.0;      // e^{-2 kappa d}
  double minus = 0.0;  // e^{-2 kappa z}
  double plus = 0.0;   // e^{-2 kappa (d - z)}
};

void check_position(const LayerContext& layer, double z) {
  bool inside = false;
  switch (layer.span) {
    case LayerSpan::finite:
      inside = z >= 0.0 && z <= layer.thickness;
      break;
    case LayerSpan::left_half:
      inside = z <= 0.0;
      break;
    case LayerSpan::right_half:
      inside = z >= 0.0;
      break;
  }
  if (!inside) throw std::invalid_argument("z lies outside the layer");
}

double effective_thickness(const LayerContext& layer) {
  return layer.span == LayerSpan::finite ? layer.thickness : 0.0;
}

Exponentials exponentials(double kappa, const LayerContext& layer, double z) {
  const double d = effective_thickness(layer);
  return {std::exp(-2.0 * kappa * d), std::exp(-2.0 * kappa * z),
          std::exp(-2.0 * kappa * (d - z))};
}

double sum_g(double xi, double k, const LayerContext& tm, const LayerContext& te,
             double z, StressMode mode) {
  if (mode == StressMode::minkowski) {
    return g_minkowski(Polarization::tm, xi, k, tm) +
           g_minkowski(Polarization::te, xi, k, te);
  }
  return g_mode(Polarization::tm, xi, k, tm, z) + g_mode(Polarization::te, xi, k, te, z);
}

// Shortest nonzero distance governing the exp(-2 kappa .) decay at a point.
double decay_length(const Stack& stack, StackPoint p) {
  const std::size_t n = stack.layers.size();
  double best = detail::kInf;
  auto take = [&](double x) {
    if (x > 0.0 && std::isfinite(x)) best = std::min(best, x);
  };
  if (p.layer == 0 || p.layer + 1 == n) {
    take(std::abs(p.z));
  } else {
    const double d = stack.layers[p.layer].thickness;
    take(p.z);
    take(d - p.z);
    take(d);
  }
  return best;
}

void check_stack(const Stack& stack, StackPoint p) {
  const auto v = validate_stack(stack);
  (void)v.value();
  if (p.layer >= stack.layers.size()) throw SceneError("layer index out of range");
  if (is_perfect_mirror(stack.layers[p.layer].material)) {
    throw SceneError("stress inside a perfect mirror is undefined");
  }
  const std::size_t n = stack.layers.size();
  const bool inside = p.layer == 0       ? p.z <= 0.0
                      : p.layer + 1 == n ? p.z >= 0.0
                                         : p.z >= 0.0 && p.z <= stack.layers[p.layer].thickness;
  if (!inside) throw std::invalid_argument("z lies outside the layer");
}

// Integrand of T at one (xi, k) for an evaluated stack.
struct PointKernel {
  std::span<const StackLayer> layers;
  StackPoint point;
  StressMode mode;

  [[nodiscard]] double operator()(double xi, double k) const {
    const auto rule = KappaRule::exact(xi, k);
    const auto tm = layer_context(Polarization::tm, layers, point.layer, rule);
    const auto te = layer_context(Polarization::te, layers, point.layer, rule);
    const double kap = rule(tm.response.n_squared);
    if (kap == 0.0) return 0.0;
    return -tm.response.mu * k / kap * sum_g(xi, k, tm, te, point.z, mode) /
           (8.0 * kPi2);
  }
};

}  // namespace

double g_mode(Polarization q, double xi, double k, const LayerContext& layer,
              double z) {
  check_position(layer, z);
  const double n2 = layer.response.n_squared;
  const double kap = kappa(xi, k, n2);
  const auto e = exponentials(kap, layer, z);
  const double rm = layer.r_minus;
  const double rp = layer.r_plus;
  const double den = 1.0 - rm * rp * e.d;
  const double dq = delta(q);
  const double inv_n2 = 1.0 / n2;
  const double bulk = 2.0 * rm * rp * e.d / den *
                      (-kap * kap * (1.0 + inv_n2) + dq * k * k * (1.0 - inv_n2));
  const double edges = (rm != 0.0 ? rm * e.minus : 0.0) + (rp != 0.0 ? rp * e.plus : 0.0);
  const double surface = dq * edges / den * (-xi * xi * (n2 - 1.0));
  return bulk + surface;
}

double g_minkowski(Polarization, double xi, double k, const LayerContext& layer) {
  const double kap = kappa(xi, k, layer.response.n_squared);
  const double e = std::exp(-2.0 * kap * effective_thickness(layer));
  const double rr = layer.r_minus * layer.r_plus;
  return -4.0 * kap * kap * rr * e / (1.0 - rr * e);
}

LayerContext layer_context(Polarization q, std::span<const StackLayer> stack,
                           std::size_t layer, const KappaRule& rule) {
  const std::size_t n = stack.size();
  if (layer >= n) throw std::invalid_argument("layer index out of range");
  if (stack[layer].medium.ideal) {
    throw std::invalid_argument("no field inside a perfect mirror");
  }
  LayerContext c;
  c.response = stack[layer].medium.response;
  if (layer == 0) {
    c.span = LayerSpan::left_half;
  } else if (layer + 1 == n) {
    c.span = LayerSpan::right_half;
  } else {
    c.thickness = stack[layer].thickness;
  }
  if (layer + 1 < n) c.r_plus = compose_reflection(q, stack.subspan(layer), rule);
  if (layer > 0) {
    c.r_minus = compose_reflection_reversed(q, stack.first(layer + 1), rule);
  }
  return c;
}

StressSample stress_zz(const Stack& stack, StackPoint point, StressMode mode,
                       const QuadratureSpec& spec) {
  check_stack(stack, point);
  const double length = decay_length(stack, point);
  const double omega = detail::lowest_transparency(stack);
  auto factory = [&](double xi) -> Integrand {
    auto layers = std::make_shared<std::vector<StackLayer>>(evaluate_stack(stack, xi));
    return [layers, point, mode, xi](double k) {
      return PointKernel{*layers, point, mode}(xi, k);
    };
  };
  const auto r = integrate_spectral_2d(factory, spec.outer(detail::xi_scale(length, omega)),
                                       spec.inner(detail::k_scale(length)));
  StressSample s;
  s.layer = point.layer;
  s.z = point.z;
  s.value = r.value;
  s.error_estimate = r.error_estimate;
  s.converged = r.converged;
  s.mode = mode;
  return s;
}

IntegrationResult stress_difference(const Stack& right_stack, StackPoint right,
                                    const Stack& left_stack, StackPoint left,
                                    StressMode mode, const QuadratureSpec& spec) {
  check_stack(right_stack, right);
  check_stack(left_stack, left);
  const double length =
      std::min(decay_length(right_stack, right), decay_length(left_stack, left));
  const double omega = std::min(detail::lowest_transparency(right_stack),
                                detail::lowest_transparency(left_stack));
  auto factory = [&](double xi) -> Integrand {
    auto lr = std::make_shared<std::vector<StackLayer>>(evaluate_stack(right_stack, xi));
    auto ll = std::make_shared<std::vector<StackLayer>>(evaluate_stack(left_stack, xi));
    return [lr, ll, right, left, mode, xi](double k) {
      return PointKernel{*lr, right, mode}(xi, k) - PointKernel{*ll, left, mode}(xi, k);
    };
  };
  return integrate_spectral_2d(factory, spec.outer(detail::xi_scale(length, omega)),
                               spec.inner(detail::k_scale(length)));
}

ForceResult interface_force(const InterfaceScene& scene, const QuadratureSpec& spec) {
  const auto validated = validate_scene(scene);
  const InterfaceScene& s = validated.value();
  double length = detail::kInf;
  for (double a : {s.a0, s.an}) {
    if (a > 0.0) length = std::min(length, a);
  }
  const double omega =
      std::min(detail::lowest_transparency(std::vector<DispersionModel>{s.left}),
               detail::lowest_transparency(std::vector<DispersionModel>{s.right}));
  auto factory = [&](double xi) -> Integrand {
    const MaterialResponse m0 = response_at(s.left, xi);
    const MaterialResponse mn = response_at(s.right, xi);
    const double a0 = s.a0;
    const double an = s.an;
    return [m0, mn, a0, an, xi](double k) {
      const double k0 = std::sqrt(m0.n_squared * xi * xi + k * k);
      const double kn = std::sqrt(mn.n_squared * xi * xi + k * k);
      if (k0 == 0.0 || kn == 0.0) return 0.0;
      double sum = 0.0;
      for (Polarization q : kPolarizations) {
        sum += delta(q) * interface_r(q, k0, kn, m0, mn);
      }
      const double w0 = m0.mu / k0 * (m0.n_squared - 1.0) * std::exp(-2.0 * k0 * a0);
      const double wn = mn.mu / kn * (mn.n_squared - 1.0) * std::exp(-2.0 * kn * an);
      return -xi * xi * k * (w0 + wn) * sum / (8.0 * kPi2);
    };
  };
  const auto r = integrate_spectral_2d(factory, spec.outer(detail::xi_scale(length, omega)),
                                       spec.inner(detail::k_scale(length)));
  return ForceResult::from(r, ForceKind::interface);
}

namespace {

using real = long double;
using cplx = std::complex<real>;

struct TraceTerms {
  cplx beta2;  // beta^2
  cplx kj2;    // k_j^2 = n^2 omega^2
  cplx a;      // [2 r- r+ e^{2 i beta d} + r- e^{2 i beta z-} + r+ e^{2 i beta z+}] / D
  cplx b;      // same with the single-reflection terms negated
  real inv_n2;
};

TraceTerms trace_terms(double xi, double k, const LayerContext& layer, double z) {
  check_position(layer, z);
  const real n2 = layer.response.n_squared;
  const real x = xi;
  const real kap = std::sqrt(n2 * x * x + real(k) * real(k));
  const cplx omega(0.0L, x);
  const cplx beta(0.0L, kap);
  const cplx i(0.0L, 1.0L);
  const real d = effective_thickness(layer);
  const cplx ed = std::exp(2.0L * i * beta * d);
  const cplx em = std::exp(2.0L * i * beta * real(z));
  const cplx ep = std::exp(2.0L * i * beta * (d - real(z)));
  const real rm = layer.r_minus;
  const real rp = layer.r_plus;
  const cplx den = 1.0L - rm * rp * ed;
  const cplx two = 2.0L * rm * rp * ed;
  const cplx single = (rm != 0.0L ? rm * em : cplx{}) + (rp != 0.0L ? rp * ep : cplx{});
  return {cplx(-(n2 * x * x + real(k) * real(k))), n2 * omega * omega, (two + single) / den,
          (two - single) / den, 1.0L / n2};
}

}  // namespace

GreenTraces equal_point_traces(double xi, double k, const LayerContext& tm,
                               const LayerContext& te, double z) {
  const auto p = trace_terms(xi, k, tm, z);
  const auto s = trace_terms(xi, k, te, z);
  const real k2 = real(k) * real(k);
  const cplx electric = p.inv_n2 * (k2 * p.a - p.beta2 * p.b - p.kj2 * s.a);
  const cplx magnetic = k2 * s.a - s.beta2 * s.b - s.kj2 * p.a;
  return {static_cast<double>(electric.real()), static_cast<double>(magnetic.real())};
}

ModeIdentity mode_identity_check(Polarization q, double xi, double k,
                                 const LayerContext& layer, double z) {
  const auto t = trace_terms(xi, k, layer, z);
  const real k2 = real(k) * real(k);
  cplx block;
  if (q == Polarization::tm) {
    block = t.inv_n2 * (k2 * t.a - t.beta2 * t.b) - t.kj2 * t.a;
  } else {
    block = -t.inv_n2 * t.kj2 * t.a + k2 * t.a - t.beta2 * t.b;
  }
  ModeIdentity out;
  out.lhs = static_cast<double>(-block.real());
  out.rhs = g_mode(q, xi, k, layer, z);
  out.difference = std::abs(out.lhs - out.rhs);
  return out;
}

}  // namespace vfl
