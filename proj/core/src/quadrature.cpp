#include "vfl/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace vfl {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();

// 21-point Kronrod abscissae (positive half) and weights; the odd entries are
// the 10-point Gauss abscissae.
constexpr std::array<double, 11> kXgk{
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kWgk{
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg{
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Sample {
  double value = 0.0;
  double aux = 0.0;  // error density carried along (inner integral errors)
};

struct Segment {
  double a = 0.0;
  double b = 0.0;
  double result = 0.0;
  double error = 0.0;
  double aux = 0.0;
  double resabs = 0.0;
};

struct Failure {
  double t;
};

template <class F>
bool gauss_kronrod_21(F& f, Segment& seg, double& bad_t) {
  const double c = 0.5 * (seg.a + seg.b);
  const double h = 0.5 * (seg.b - seg.a);
  std::array<double, 21> fv{};
  double resk = 0.0, resg = 0.0, resabs = 0.0, aux = 0.0;

  auto eval = [&](double t, double& out_aux) -> double {
    const Sample s = f(t);
    if (!std::isfinite(s.value) || !std::isfinite(s.aux)) {
      bad_t = t;
      return std::numeric_limits<double>::quiet_NaN();
    }
    out_aux = s.aux;
    return s.value;
  };

  double a_c = 0.0;
  const double fc = eval(c, a_c);
  if (std::isnan(fc)) return false;
  fv[20] = fc;
  resk = kWgk[10] * fc;
  resabs = kWgk[10] * std::abs(fc);
  aux = kWgk[10] * std::abs(a_c);
  for (int i = 0; i < 10; ++i) {
    const double dx = h * kXgk[i];
    double a1 = 0.0, a2 = 0.0;
    const double f1 = eval(c - dx, a1);
    if (std::isnan(f1)) return false;
    const double f2 = eval(c + dx, a2);
    if (std::isnan(f2)) return false;
    fv[2 * i] = f1;
    fv[2 * i + 1] = f2;
    resk += kWgk[i] * (f1 + f2);
    resabs += kWgk[i] * (std::abs(f1) + std::abs(f2));
    aux += kWgk[i] * (std::abs(a1) + std::abs(a2));
    if (i % 2 == 1) resg += kWg[i / 2] * (f1 + f2);
  }
  const double mean = 0.5 * resk;
  double resasc = kWgk[10] * std::abs(fc - mean);
  for (int i = 0; i < 10; ++i) {
    resasc += kWgk[i] * (std::abs(fv[2 * i] - mean) + std::abs(fv[2 * i + 1] - mean));
  }
  const double ah = std::abs(h);
  seg.result = resk * h;
  seg.resabs = resabs * ah;
  seg.aux = aux * ah;
  resasc *= ah;
  double err = std::abs((resk - resg) * h);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  if (seg.resabs > kTiny / (50.0 * kEps)) err = std::max(50.0 * kEps * seg.resabs, err);
  seg.error = err;
  return true;
}

template <class F, class ToX>
IntegrationResult adaptive(F&& f, ToX&& to_x, double a, double b,
                           const HalfLineRule& rule) {
  IntegrationResult out;
  long evals = 0;
  auto counted = [&](double t) {
    ++evals;
    return f(t);
  };

  std::vector<Segment> segs;
  segs.reserve(static_cast<std::size_t>(std::max(rule.max_subdivisions, 1)) + 1);
  double bad_t = 0.0;
  Segment first{a, b};
  if (!gauss_kronrod_21(counted, first, bad_t)) {
    out.status = QuadratureStatus::non_finite;
    out.failure_location = to_x(bad_t);
    out.value = std::numeric_limits<double>::quiet_NaN();
    out.error_estimate = std::numeric_limits<double>::infinity();
    out.evaluations = evals;
    return out;
  }
  segs.push_back(first);

  for (;;) {
    double total = 0.0, err = 0.0, aux = 0.0, resabs = 0.0;
    for (const auto& s : segs) {
      total += s.result;
      err += s.error;
      aux += s.aux;
      resabs += s.resabs;
    }
    const double tol = std::max(rule.abs_tol, rule.rel_tol * std::abs(total));
    out.value = total;
    out.error_estimate = err + aux;
    out.evaluations = evals;

    const bool roundoff_limited = err <= 50.0 * kEps * resabs;
    if (err + aux <= tol || (roundoff_limited && aux <= tol)) {
      out.converged = true;
      out.status = QuadratureStatus::converged;
      return out;
    }
    if (err <= tol || roundoff_limited ||
        static_cast<int>(segs.size()) >= rule.max_subdivisions) {
      // Either the inner estimates dominate (subdividing cannot help) or the
      // budget is spent.
      out.converged = false;
      out.status = QuadratureStatus::max_subdivisions;
      return out;
    }

    auto worst = std::max_element(segs.begin(), segs.end(),
                                  [](const Segment& x, const Segment& y) {
                                    return x.error < y.error;
                                  });
    const double mid = 0.5 * (worst->a + worst->b);
    Segment left{worst->a, mid};
    Segment right{mid, worst->b};
    if (!gauss_kronrod_21(counted, left, bad_t) ||
        !gauss_kronrod_21(counted, right, bad_t)) {
      out.status = QuadratureStatus::non_finite;
      out.converged = false;
      out.failure_location = to_x(bad_t);
      out.value = std::numeric_limits<double>::quiet_NaN();
      out.error_estimate = std::numeric_limits<double>::infinity();
      out.evaluations = evals;
      return out;
    }
    *worst = left;
    segs.push_back(right);
  }
}

struct HalfLineMapping {
  HalfLineMap map;
  double lower;
  double scale;

  [[nodiscard]] double x(double t) const noexcept {
    return map == HalfLineMap::rational ? lower + scale * t / (1.0 - t)
                                        : lower - scale * std::log1p(-t);
  }
  [[nodiscard]] double jacobian(double t) const noexcept {
    const double u = 1.0 - t;
    return map == HalfLineMap::rational ? scale / (u * u) : scale / u;
  }
};

template <class G>
IntegrationResult halfline(G&& g, double lower, const HalfLineRule& rule) {
  const double scale = rule.scale > 0.0 && std::isfinite(rule.scale) ? rule.scale : 1.0;
  const HalfLineMapping m{rule.map, lower, scale};
  auto f = [&](double t) {
    const double x = m.x(t);
    Sample s = g(x);
    const double w = m.jacobian(t);
    // A vanishing integrand far out in the tail stays zero even when the
    // jacobian overflows.
    if (s.value == 0.0 && s.aux == 0.0) return s;
    s.value *= w;
    s.aux *= w;
    return s;
  };
  return adaptive(f, [&](double t) { return m.x(t); }, 0.0, 1.0, rule);
}

}  // namespace

HalfLineRule QuadratureSpec::outer(double scale_hint) const noexcept {
  return {rel_tol_outer, abs_tol, max_subdivisions, map,
          outer_scale > 0.0 ? outer_scale : scale_hint};
}

HalfLineRule QuadratureSpec::inner(double scale_hint) const noexcept {
  return {rel_tol_inner, 0.0, max_subdivisions, map,
          inner_scale > 0.0 ? inner_scale : scale_hint};
}

IntegrationResult integrate_interval(const Integrand& f, double a, double b,
                                     const HalfLineRule& rule) {
  if (a == b) return {};
  auto g = [&](double x) { return Sample{f(x), 0.0}; };
  return adaptive(g, [](double x) { return x; }, a, b, rule);
}

IntegrationResult integrate_halfline(const Integrand& f, double lower,
                                     const HalfLineRule& rule) {
  return halfline([&](double x) { return Sample{f(x), 0.0}; }, lower, rule);
}

IntegrationResult integrate_spectral_2d(const InnerFactory& factory,
                                        const HalfLineRule& outer,
                                        const HalfLineRule& inner,
                                        double outer_lower, double inner_lower) {
  long inner_evals = 0;
  bool inner_failed = false;
  auto g = [&](double xi) {
    const Integrand f = factory(xi);
    const IntegrationResult r = integrate_halfline(f, inner_lower, inner);
    inner_evals += r.evaluations;
    if (r.status == QuadratureStatus::non_finite) {
      return Sample{std::numeric_limits<double>::quiet_NaN(), 0.0};
    }
    if (!r.converged) inner_failed = true;
    return Sample{r.value, r.error_estimate};
  };
  IntegrationResult out = halfline(g, outer_lower, outer);
  out.evaluations = inner_evals;
  if (inner_failed && out.converged) {
    // The inner estimates already enter error_estimate; keep the flag honest
    // only if they break the requested tolerance.
    const double tol = std::max(outer.abs_tol, outer.rel_tol * std::abs(out.value));
    if (out.error_estimate > tol) {
      out.converged = false;
      out.status = QuadratureStatus::max_subdivisions;
    }
  }
  return out;
}

IntegrationResult integrate_spectral_2d(const std::function<double(double, double)>& g,
                                        const HalfLineRule& outer,
                                        const HalfLineRule& inner) {
  return integrate_spectral_2d(
      [&g](double xi) -> Integrand { return [&g, xi](double k) { return g(xi, k); }; },
      outer, inner);
}

}  // namespace vfl
