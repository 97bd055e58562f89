#include "vfl/fresnel.hpp"

#include <cmath>
#include <stdexcept>

namespace vfl {
namespace {

double weight(Polarization q, const MaterialResponse& m) noexcept {
  return q == Polarization::tm ? m.epsilon : m.mu;
}

// Shared recurrence; `at(i)` returns the i-th layer walking away from the
// incidence medium.
template <class At>
double compose(Polarization q, std::size_t n, At&& at, const KappaRule& rule) {
  if (n == 0) throw std::invalid_argument("empty stack");
  if (at(0).medium.ideal) {
    throw std::invalid_argument("incidence from inside a perfect mirror is undefined");
  }
  if (n == 1) return 0.0;

  std::size_t last = n - 1;
  for (std::size_t i = 1; i < n; ++i) {
    if (at(i).medium.ideal) {
      last = i;
      break;
    }
  }

  const StackLayer& end = at(last);
  const StackLayer& before = at(last - 1);
  const double kappa_before = rule(before.medium.response.n_squared);
  double r = end.medium.ideal
                 ? ideal_reflection(*end.medium.ideal, q)
                 : interface_r(q, kappa_before, rule(end.medium.response.n_squared),
                               before.medium.response, end.medium.response);

  double kappa_j = kappa_before;
  for (std::size_t j = last - 1; j >= 1; --j) {
    const StackLayer& lj = at(j);
    const StackLayer& li = at(j - 1);
    const double kappa_i = rule(li.medium.response.n_squared);
    const double r_ij = interface_r(q, kappa_i, kappa_j, li.medium.response,
                                    lj.medium.response);
    const double e = std::exp(-2.0 * kappa_j * lj.thickness);
    // r_ij + t_ij t_ji r e / (1 - r_ji r e) with t_ij t_ji = 1 - r_ij^2 and
    // r_ji = -r_ij collapses to this form.
    r = (r_ij + r * e) / (1.0 + r_ij * r * e);
    kappa_j = kappa_i;
  }
  return r;
}

}  // namespace

Medium evaluate(const DispersionModel& model, double xi) {
  if (auto kind = perfect_mirror_kind(model)) return Medium{make_response(1.0, 1.0), kind};
  return Medium::of(response_at(model, xi));
}

Medium evaluate_static(const DispersionModel& model) { return evaluate(model, 0.0); }

KappaRule KappaRule::exact(double xi, double k) noexcept {
  KappaRule rule;
  rule.kind_ = Kind::exact;
  rule.a_ = xi * xi;
  rule.b_ = k * k;
  return rule;
}

KappaRule KappaRule::quasistatic(double k) noexcept {
  KappaRule rule;
  rule.kind_ = Kind::quasistatic;
  rule.b_ = k;
  return rule;
}

KappaRule KappaRule::radial(double p, double n_ref_squared, double scale) noexcept {
  KappaRule rule;
  rule.kind_ = Kind::radial;
  rule.a_ = p * p - 1.0;
  rule.b_ = 1.0 / n_ref_squared;
  rule.c_ = scale;
  return rule;
}

double KappaRule::operator()(double n_squared) const noexcept {
  switch (kind_) {
    case Kind::exact:
      return std::sqrt(n_squared * a_ + b_);
    case Kind::quasistatic:
      return b_;
    case Kind::radial:
      return c_ * std::sqrt(a_ + n_squared * b_);
  }
  return 0.0;
}

double kappa(double xi, double k, double n_squared) {
  if (!(xi >= 0.0) || !(k >= 0.0)) {
    throw std::invalid_argument("kappa: xi and k must be non-negative");
  }
  if (xi == 0.0 && k == 0.0) {
    throw std::invalid_argument("kappa: degenerate mode xi = k = 0");
  }
  return std::sqrt(n_squared * xi * xi + k * k);
}

double interface_r(Polarization q, double kappa_i, double kappa_j,
                   const MaterialResponse& i, const MaterialResponse& j) noexcept {
  const double w_i = weight(q, i);
  const double w_j = weight(q, j);
  if (std::isinf(w_j)) return std::isinf(w_i) ? 0.0 : 1.0;
  if (std::isinf(w_i)) return -1.0;
  if (std::isinf(kappa_j)) return std::isinf(kappa_i) ? 0.0 : -1.0;
  if (std::isinf(kappa_i)) return 1.0;
  const double a = w_j * kappa_i;
  const double b = w_i * kappa_j;
  return (a - b) / (a + b);
}

InterfaceCoefficients interface_rt(Polarization q, double xi, double k,
                                   const Medium& i, const Medium& j) {
  if (i.ideal) {
    throw std::invalid_argument("incidence from inside a perfect mirror is undefined");
  }
  if (j.ideal) return {ideal_reflection(*j.ideal, q), 0.0};
  const double kappa_i = kappa(xi, k, i.response.n_squared);
  const double kappa_j = kappa(xi, k, j.response.n_squared);
  const double r = interface_r(q, kappa_i, kappa_j, i.response, j.response);
  double ratio = 1.0;  // gamma^q / gamma^s
  if (q == Polarization::tm) {
    ratio = (i.response.epsilon / j.response.epsilon) /
            (i.response.mu / j.response.mu);
  }
  return {r, std::sqrt(ratio) * (1.0 + r)};
}

InterfaceCoefficients interface_rt(Polarization q, double xi, double k,
                                   const DispersionModel& i,
                                   const DispersionModel& j) {
  return interface_rt(q, xi, k, evaluate(i, xi), evaluate(j, xi));
}

std::vector<StackLayer> evaluate_stack(const Stack& stack, double xi) {
  std::vector<StackLayer> out;
  out.reserve(stack.layers.size());
  for (const auto& l : stack.layers) out.push_back({evaluate(l.material, xi), l.thickness});
  return out;
}

std::vector<StackLayer> evaluate_stack_static(const Stack& stack) {
  return evaluate_stack(stack, 0.0);
}

double compose_reflection(Polarization q, std::span<const StackLayer> stack,
                          const KappaRule& rule) {
  return compose(
      q, stack.size(), [&](std::size_t i) -> const StackLayer& { return stack[i]; },
      rule);
}

double compose_reflection_reversed(Polarization q,
                                   std::span<const StackLayer> stack,
                                   const KappaRule& rule) {
  const std::size_t n = stack.size();
  return compose(
      q, n, [&](std::size_t i) -> const StackLayer& { return stack[n - 1 - i]; },
      rule);
}

double compose_reflection(Polarization q, double xi, double k, const Stack& stack) {
  (void)kappa(xi, k, 1.0);  // rejects the degenerate mode
  const auto layers = evaluate_stack(stack, xi);
  return compose_reflection(q, layers, KappaRule::exact(xi, k));
}

SlabCoefficients slab_from_rho(double rho, double kappa_s_thickness) noexcept {
  if (kappa_s_thickness == 0.0) return {0.0, 1.0, 0.0};
  if (std::isinf(kappa_s_thickness)) return {rho, 0.0, (1.0 + rho) * (1.0 + rho)};
  const double x = std::exp(-2.0 * kappa_s_thickness);
  const double one_minus_x = -std::expm1(-2.0 * kappa_s_thickness);
  const double den = 1.0 - rho * rho * x;
  SlabCoefficients c;
  c.r = rho * one_minus_x / den;
  c.t = (1.0 - rho * rho) * std::exp(-kappa_s_thickness) / den;
  // (1+r)^2 - t^2 factors exactly into (1+rho)^2 (1-x) / (1 - rho^2 x).
  c.bracket = (1.0 + rho) * (1.0 + rho) * one_minus_x / den;
  return c;
}

SlabCoefficients slab_coefficients(Polarization q, const Medium& medium,
                                   const Medium& slab, double thickness,
                                   const KappaRule& rule) noexcept {
  if (thickness == 0.0) return {0.0, 1.0, 0.0};
  if (slab.ideal) {
    const double r = ideal_reflection(*slab.ideal, q);
    return {r, 0.0, (1.0 + r) * (1.0 + r)};
  }
  const double kappa_m = rule(medium.response.n_squared);
  const double kappa_s = rule(slab.response.n_squared);
  const double rho = interface_r(q, kappa_m, kappa_s, medium.response, slab.response);
  return slab_from_rho(rho, kappa_s * thickness);
}

SlabCoefficients slab_rt(Polarization q, double xi, double k,
                         const DispersionModel& medium, const DispersionModel& slab,
                         double thickness) {
  if (!(thickness >= 0.0)) throw std::invalid_argument("slab thickness must be >= 0");
  (void)kappa(xi, k, 1.0);
  return slab_coefficients(q, evaluate(medium, xi), evaluate(slab, xi), thickness,
                           KappaRule::exact(xi, k));
}

double gamma_ratio(Polarization q, const MaterialResponse& medium,
                   const MaterialResponse& slab) noexcept {
  return weight(q, medium) / weight(q, slab);
}

ThinSlabCoefficients thin_slab_rt(Polarization q, double xi, double k,
                                  const DispersionModel& medium,
                                  const DispersionModel& slab, double thickness) {
  const auto m = response_at(medium, xi);
  const auto s = response_at(slab, xi);
  const double kappa_m = kappa(xi, k, m.n_squared);
  const double kappa_s = kappa(xi, k, s.n_squared);
  const double rho = interface_r(q, kappa_m, kappa_s, m, s);
  return {2.0 * rho * kappa_s * thickness / (1.0 - rho * rho),
          2.0 * kappa_m * thickness / gamma_ratio(q, m, s)};
}

RadialCoefficients radial_coefficients(Polarization q, double p,
                                       const Medium& medium, const Medium& layer) {
  if (!(p >= 1.0)) throw std::invalid_argument("radial coefficients need p >= 1");
  if (layer.ideal) return {semi_infinite, ideal_reflection(*layer.ideal, q)};
  const double n2 = medium.response.n_squared;
  const double s = std::sqrt(p * p - 1.0 + layer.response.n_squared / n2);
  return {s, interface_r(q, p, s, medium.response, layer.response)};
}

double quasistatic_reflection(Polarization q, const MaterialResponse& medium,
                              const MaterialResponse& layer) noexcept {
  const double w = weight(q, medium);
  const double w_l = weight(q, layer);
  if (std::isinf(w_l)) return 1.0;
  return (w_l - w) / (w_l + w);
}

}  // namespace vfl
