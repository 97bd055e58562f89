// Acceptance suite: one PASS/FAIL line per criterion.

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "vfl/asymptotics.hpp"
#include "vfl/forces.hpp"
#include "vfl/stress.hpp"

using namespace vfl;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& check) {
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("%s [%2d] %s: %s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[192];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

CavityScene ideal_vacuum(double d) {
  CavityScene s;
  s.slab = {PerfectMirror{}, 1.0};
  s.gap2 = d;
  s.mirror2 = Mirror::perfect();
  return s;
}

QuadratureSpec tight() {
  QuadratureSpec q;
  q.rel_tol_outer = 1e-8;
  q.rel_tol_inner = 1e-10;
  return q;
}

double decade_slope(double d0, const std::function<double(double)>& f) {
  std::vector<double> x, y;
  for (int i = 0; i <= 4; ++i) {
    const double d = d0 * std::pow(10.0, i / 4.0);
    x.push_back(d);
    y.push_back(f(d));
  }
  return fit_loglog_slope(x, y).slope;
}

Outcome vacuum_anchor() {
  double worst = 0.0;
  for (double d : {1.0, 10.0}) {
    const auto f = screened_force(ideal_vacuum(d), tight());
    worst = std::max(worst, rel(f.value * std::pow(d, 4), kPi * kPi / 240.0));
  }
  return {worst <= 1e-4, fmt("max relative deviation of f1 d^4 from pi^2/240 = %.2e", worst)};
}

Outcome assisted_vanishes() {
  double worst = 0.0;
  for (double d : {1.0, 10.0}) {
    const double f1 = screened_force(ideal_vacuum(d), tight()).value;
    const double f2 = assisted_force(ideal_vacuum(d), tight()).value;
    worst = std::max(worst, std::abs(f2) / std::abs(f1));
  }
  return {worst <= 1e-12, fmt("max |f2|/|f1| = %.2e", worst)};
}

Outcome lorentz_minkowski_vacuum() {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> xs(0.01, 4.0), ks(0.01, 6.0), r(-0.99, 0.99), d(0.05, 3.0),
      u(0.0, 1.0);
  double worst = 0.0;
  for (int n = 0; n < 1000; ++n) {
    LayerContext c;
    c.r_minus = r(rng);
    c.r_plus = r(rng);
    c.thickness = d(rng);
    const Polarization q = n % 2 ? Polarization::tm : Polarization::te;
    const double xi = xs(rng), k = ks(rng), z = c.thickness * u(rng);
    const double a = g_mode(q, xi, k, c, z);
    const double b = g_minkowski(q, xi, k, c);
    worst = std::max(worst, std::abs(a - b) / std::max(std::abs(b), 1e-300));
  }
  return {worst <= 1e-12, fmt("1000 samples, max relative difference %.2e", worst)};
}

Outcome split_consistency() {
  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> gap(0.2, 2.0), th(0.05, 1.0), eps(1.0, 3.0), wp(2.0, 4.0);
  int ok = 0;
  double worst = 0.0;
  for (int n = 0; n < 10; ++n) {
    CavityScene s;
    s.medium = LorentzMedium{{{1.5, eps(rng), 0.1}}, {}};
    s.mirror1 = Mirror::half_space(DrudeMetal{wp(rng), 0.05, {}});
    s.gap1 = gap(rng);
    s.slab = {oracle::random_lorentz(rng), th(rng)};
    s.gap2 = gap(rng);
    s.mirror2 = Mirror{{{oracle::random_lorentz(rng), th(rng)}, {DrudeMetal{wp(rng), 0.1, {}}, semi_infinite}}};
    const auto sp = cavity_force_split(s, {});
    const double diff = std::abs(sp.screened.value + sp.assisted.value - sp.total.value);
    const double err = sp.screened.error_estimate + sp.assisted.error_estimate + sp.total.error_estimate;
    worst = std::max(worst, diff / err);
    if (diff <= 3.0 * err) ++ok;
  }
  return {ok == 10, fmt("%.0f/10 scenes within 3x combined error; max |diff|/error = %.2e", ok, worst)};
}

Outcome ideal_medium_closed_forms() {
  CavityScene s;
  s.medium = ConstantMedium{2.0, 1.0};
  s.slab = {ConstantMedium{1e6, 1.0}, semi_infinite};
  s.mirror2 = Mirror::half_space(ConstantMedium{1e6, 1.0});
  const QuadratureSpec q = tight();
  const auto cf = ideal_mirror_closed_forms(2.0, 1.0);
  const double f2 = large_distance_force(LargeKind::assisted_lifshitz, s, 1.0, q).value;
  const double f1 = large_distance_force(LargeKind::screened_lifshitz, s, 1.0, q).value;
  const auto big = ideal_mirror_closed_forms(1e4, 1.0);
  const double ratio = big.assisted / big.screened;
  const double e2 = rel(f2, cf.assisted), e1 = rel(f1, cf.screened), er = rel(ratio, 1.0 / 3.0);
  std::ostringstream os;
  os << fmt("f2 off by %.3f%%, f1 off by %.3f%%", 100.0 * (f2 / cf.assisted - 1.0),
            100.0 * (f1 / cf.screened - 1.0))
     << fmt(" (limit 0.5%%); f2/f1 at n0^2=1e4 = %.5f, %.3f%% from 1/3", ratio, 100.0 * er);
  return {e2 <= 5e-3 && e1 <= 5e-3 && er <= 1e-2, os.str()};
}

Outcome power_laws() {
  const DispersionModel mirror = LorentzMedium{{{1.0, 2.0, 0.05}}, {}};
  const DispersionModel medium = LorentzMedium{{{3.0, 1.0, 0.1}}, {}};
  const DispersionModel slab = LorentzMedium{{{2.0, 1.5, 0.1}}, {}};
  CavityScene s;
  s.medium = medium;
  s.slab = {slab, semi_infinite};
  s.mirror2 = Mirror::half_space(mirror);
  const double L = regime_scales(s).lambda;
  const QuadratureSpec q = tight();
  auto at = [&](double d, double ds) {
    CavityScene t = s;
    t.gap2 = d;
    t.slab.thickness = ds;
    return t;
  };
  const double small = 1e-5 * L, large = 10.0 * L;
  const double s2 = decade_slope(small, [&](double d) { return assisted_force(at(d, semi_infinite), q).value; });
  const double s1 = decade_slope(small, [&](double d) { return screened_force(at(d, semi_infinite), q).value; });
  const double l2 = decade_slope(large, [&](double d) { return assisted_force(at(d, semi_infinite), q).value; });
  const double t2 = decade_slope(small, [&](double d) { return assisted_force(at(d, 1e-3 * small), q).value; });
  const double lt = decade_slope(large, [&](double d) { return assisted_force(at(d, 1e-3 * large), q).value; });
  const bool ok = std::abs(s2 + 1.0) <= 0.05 && std::abs(s1 + 3.0) <= 0.05 &&
                  std::abs(l2 + 4.0) <= 0.05 && std::abs(t2 + 2.0) <= 0.05 &&
                  std::abs(lt + 5.0) <= 0.05;
  std::ostringstream os;
  os << fmt("f2 small %.4f, f1 small %.4f", s2, s1) << fmt(", f2 large %.4f", l2)
     << fmt(", thin small %.4f, thin large %.4f", t2, lt);
  return {ok, os.str()};
}

Outcome medium_layer_anchor() {
  const double c = radial_mirror_integral(Mirror::perfect(MirrorKind::conducting), vacuum()).value;
  const double p = radial_mirror_integral(Mirror::perfect(MirrorKind::permeable), vacuum()).value;
  const double e = std::max(std::abs(c - 2.0 / 3.0), std::abs(p + 2.0 / 3.0));
  return {e <= 1e-9, fmt("conducting %.12f, permeable %.12f", c, p)};
}

Outcome atom_forces() {
  AtomProperties a;
  a.electric = {1e-3, 1.0};
  const double L = 2.0 * kPi / a.electric.resonance;
  const QuadratureSpec q = tight();
  double worst_cp = 0.0, worst_ratio = 0.0;
  for (double m : {10.0, 30.0}) {
    const double d = m * L;
    const double vac = atom_force_vacuum(Mirror::perfect(), a, d, q).value;
    const double med = atom_force(Mirror::perfect(), vacuum(), a, d, q).value;
    worst_cp = std::max(worst_cp, rel(vac, 3.0 * a.electric.static_value / (2.0 * kPi * std::pow(d, 5))));
    worst_ratio = std::max(worst_ratio, rel(med / vac, 1.0 / 3.0));
  }
  const Mirror lorentz = Mirror::half_space(LorentzMedium{{{1.0, 2.0, 0.05}}, {}});
  const double slope = decade_slope(1e-4 * L, [&](double d) { return atom_force(lorentz, vacuum(), a, d, q).value; });
  std::ostringstream os;
  os << fmt("Casimir-Polder deviation %.3f%%, f_a/f~_a deviation from 1/3 %.3f%%", 100.0 * worst_cp,
            100.0 * worst_ratio)
     << fmt(", small-d slope %.4f", slope);
  return {worst_cp <= 1e-2 && worst_ratio <= 2e-2 && std::abs(slope + 2.0) <= 0.05, os.str()};
}

Outcome fresnel_oracle() {
  std::mt19937 rng(9001);
  std::uniform_real_distribution<double> xs(0.01, 5.0), ks(0.01, 8.0), e(1.0, 9.0), m(1.0, 4.0), th(0.05, 1.5);
  double worst = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const double xi = xs(rng), k = ks(rng);
    const auto rs = oracle::random_stack(rng, xi, true);
    for (Polarization q : kPolarizations) {
      const double a = compose_reflection(q, xi, k, rs.stack);
      const double b = oracle::transfer_matrix_reflection(q, xi, k, rs.plain);
      worst = std::max(worst, std::abs(a - b) / std::max(std::abs(b), 1e-8));
    }
  }
  double dual = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const double xi = xs(rng), k = ks(rng);
    Stack a, b;
    const int layers = 2 + n % 3;
    for (int i = 0; i < layers; ++i) {
      const double ei = e(rng), mi = m(rng);
      const double t = (i == 0 || i + 1 == layers) ? semi_infinite : th(rng);
      a.layers.push_back({ConstantMedium{ei, mi}, t});
      b.layers.push_back({ConstantMedium{mi, ei}, t});
    }
    for (Polarization q : kPolarizations) {
      const Polarization other = q == Polarization::tm ? Polarization::te : Polarization::tm;
      const double x = compose_reflection(q, xi, k, a);
      const double y = compose_reflection(other, xi, k, b);
      dual = std::max(dual, std::abs(x - y) / std::max(std::abs(x), 1e-8));
    }
  }
  return {worst <= 1e-12 && dual <= 1e-12,
          fmt("transfer-matrix max relative difference %.2e, duality %.2e", worst, dual)};
}

Outcome green_identity() {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> xs(0.01, 4.0), ks(0.01, 6.0), r(-0.99, 0.99), e(1.0, 10.0),
      m(1.0, 3.0), d(0.05, 3.0), u(0.0, 1.0);
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    LayerContext c;
    c.r_minus = r(rng);
    c.r_plus = r(rng);
    c.thickness = d(rng);
    c.response = make_response(e(rng), m(rng));
    const double xi = xs(rng), k = ks(rng), z = c.thickness * u(rng);
    for (Polarization q : kPolarizations) {
      const auto id = mode_identity_check(q, xi, k, c, z);
      worst = std::max(worst, id.difference / std::max(std::abs(id.rhs), 1e-300));
    }
  }
  return {worst <= 1e-12, fmt("100 samples, max relative difference %.2e", worst)};
}

Outcome interface_force_check() {
  const DispersionModel a = LorentzMedium{{{1.0, 1.4, 0.1}}, {}};
  const DispersionModel b = ConstantMedium{3.0, 1.2};
  const QuadratureSpec q = tight();
  const auto sym = interface_force({a, a, 0.3, 0.5}, q);
  const auto f = interface_force({a, b, 0.3, 0.5}, q);
  const auto g = interface_force({b, a, 0.5, 0.3}, q);
  const double tol = 1e-12 * std::abs(f.value);
  const double anti = std::abs(f.value + g.value);
  const double qtol = std::max(q.rel_tol_outer * std::abs(f.value), f.error_estimate + g.error_estimate);
  std::ostringstream os;
  os << fmt("symmetric value %.2e, |f(a,b) + f(b,a)| = %.2e", sym.value, anti)
     << fmt(" (tolerance %.2e)", qtol);
  return {std::abs(sym.value) <= tol && anti <= qtol, os.str()};
}

#ifdef VFL_BINARY
int shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
#endif

Outcome cli_determinism() {
#ifndef VFL_BINARY
  return {false, "command line tool not built"};
#else
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("vfl_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string good = std::string(VFL_CONFIG_DIR) + "/water_gold.yaml";
  const std::string base = std::string(VFL_BINARY) + " run --config " + good + " --no-header-timestamp";
  const int r1 = shell(base + " --jobs 4 --output " + (dir / "a.csv").string());
  const int r2 = shell(base + " --jobs 1 --output " + (dir / "b.csv").string());
  const bool same = r1 == 0 && r2 == 0 && slurp(dir / "a.csv") == slurp(dir / "b.csv") &&
                    !slurp(dir / "a.csv").empty();
  std::ofstream(dir / "bad.yaml") << "materials:\n  ideal: {model: perfect}\nscene:\n  medium: vacuum\n"
                                     "  slab: {material: ideal, thickness: 1.0}\n  mirror2: au\n"
                                     "sweep: {d_min: 1.0}\n";
  const int r3 = shell(std::string(VFL_BINARY) + " run --config " + (dir / "bad.yaml").string() +
                       " 2> " + (dir / "err.txt").string());
  const std::string err = slurp(dir / "err.txt");
  const bool named = err.find("scene.mirror2") != std::string::npos;
  fs::remove_all(dir);
  std::ostringstream os;
  os << "repeat runs " << (same ? "byte-identical" : "differ") << "; invalid config exit " << r3
     << (named ? " naming scene.mirror2" : " without naming the key");
  return {same && r3 == 2 && named, os.str()};
#endif
}

}  // namespace

int main() {
  report(1, "vacuum Casimir anchor", vacuum_anchor);
  report(2, "medium-assisted force vanishes in vacuum", assisted_vanishes);
  report(3, "Lorentz and Minkowski mode functions coincide in vacuum", lorentz_minkowski_vacuum);
  report(4, "split consistency f1 + f2 = f_s", split_consistency);
  report(5, "ideal-medium closed forms", ideal_medium_closed_forms);
  report(6, "power laws in the Lifshitz configuration", power_laws);
  report(7, "medium-layer radial integral", medium_layer_anchor);
  report(8, "atom forces", atom_forces);
  report(9, "Fresnel recursion oracle and duality", fresnel_oracle);
  report(10, "Green-function identity", green_identity);
  report(11, "interface force symmetry", interface_force_check);
  report(12, "CLI determinism and config errors", cli_determinism);
  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
