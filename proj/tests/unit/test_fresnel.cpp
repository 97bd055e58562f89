#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "vfl/fresnel.hpp"

using namespace vfl;

using oracle::random_stack;
using oracle::RandomStack;

TEST(Fresnel, InterfaceFormula) {
  const auto a = make_response(2.0, 1.5);
  const auto b = make_response(5.0, 1.0);
  const double ka = 1.3, kb = 2.1;
  EXPECT_NEAR(interface_r(Polarization::tm, ka, kb, a, b), (5.0 * ka - 2.0 * kb) / (5.0 * ka + 2.0 * kb),
              1e-15);
  EXPECT_NEAR(interface_r(Polarization::te, ka, kb, a, b), (1.0 * ka - 1.5 * kb) / (1.0 * ka + 1.5 * kb),
              1e-15);
}

TEST(Fresnel, InterfaceAntisymmetryAndTransmission) {
  const Medium a = Medium::of(make_response(2.0, 1.5));
  const Medium b = Medium::of(make_response(5.0, 1.2));
  for (Polarization q : kPolarizations) {
    const auto ab = interface_rt(q, 0.7, 1.1, a, b);
    const auto ba = interface_rt(q, 0.7, 1.1, b, a);
    EXPECT_NEAR(ab.r, -ba.r, 1e-15);
    EXPECT_NEAR(ab.t * ba.t, 1.0 - ab.r * ab.r, 1e-14);
  }
}

TEST(Fresnel, PerfectMirrorValues) {
  const Stack st{{{vacuum(), semi_infinite}, {PerfectMirror{MirrorKind::conducting}, semi_infinite}}};
  EXPECT_DOUBLE_EQ(compose_reflection(Polarization::tm, 0.5, 0.5, st), 1.0);
  EXPECT_DOUBLE_EQ(compose_reflection(Polarization::te, 0.5, 0.5, st), -1.0);
  const Stack pm{{{vacuum(), semi_infinite}, {PerfectMirror{MirrorKind::permeable}, semi_infinite}}};
  EXPECT_DOUBLE_EQ(compose_reflection(Polarization::tm, 0.5, 0.5, pm), -1.0);
  EXPECT_DOUBLE_EQ(compose_reflection(Polarization::te, 0.5, 0.5, pm), 1.0);
}

TEST(Fresnel, StaticConductorReflectsFully) {
  const Medium vac = evaluate_static(vacuum());
  const Medium drude = evaluate_static(DrudeMetal{2.0, 0.1, {}});
  const auto tm = radial_coefficients(Polarization::tm, 1.5, vac, drude);
  const auto te = radial_coefficients(Polarization::te, 1.5, vac, drude);
  EXPECT_DOUBLE_EQ(tm.R, 1.0);
  EXPECT_NEAR(te.R, -1.0, 1e-15);
}

TEST(Fresnel, ComposeMatchesTransferMatrix) {
  std::mt19937 rng(20240611);
  std::uniform_real_distribution<double> xs(0.01, 5.0), ks(0.01, 8.0);
  double worst = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const double xi = xs(rng), k = ks(rng);
    const RandomStack rs = random_stack(rng, xi, true);
    for (Polarization q : kPolarizations) {
      const double a = compose_reflection(q, xi, k, rs.stack);
      const double b = oracle::transfer_matrix_reflection(q, xi, k, rs.plain);
      const double rel = std::abs(a - b) / std::max(std::abs(b), 1e-300);
      worst = std::max(worst, std::abs(b) > 1e-8 ? rel : std::abs(a - b));
    }
  }
  EXPECT_LT(worst, 1e-12);
}

TEST(Fresnel, DualitySwapsPolarizations) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> xs(0.01, 5.0), ks(0.01, 8.0), e(1.0, 9.0), m(1.0, 4.0),
      th(0.05, 1.5);
  for (int n = 0; n < 200; ++n) {
    const double xi = xs(rng), k = ks(rng);
    Stack a, b;
    for (int i = 0; i < 4; ++i) {
      const double ei = e(rng), mi = m(rng);
      const double t = (i == 0 || i == 3) ? semi_infinite : th(rng);
      a.layers.push_back({ConstantMedium{ei, mi}, t});
      b.layers.push_back({ConstantMedium{mi, ei}, t});
    }
    const double tm = compose_reflection(Polarization::tm, xi, k, a);
    const double te = compose_reflection(Polarization::te, xi, k, b);
    EXPECT_NEAR(tm, te, 1e-12 * std::max(1.0, std::abs(tm)));
  }
}

TEST(Fresnel, ReversedCompositionMatchesReversedStack) {
  std::mt19937 rng(99);
  for (int n = 0; n < 100; ++n) {
    const RandomStack rs = random_stack(rng, 0.6, false);
    const auto layers = evaluate_stack(rs.stack, 0.6);
    std::vector<StackLayer> rev(layers.rbegin(), layers.rend());
    const auto rule = KappaRule::exact(0.6, 1.4);
    for (Polarization q : kPolarizations) {
      EXPECT_NEAR(compose_reflection_reversed(q, layers, rule), compose_reflection(q, rev, rule),
                  1e-13);
    }
  }
}

TEST(Fresnel, SlabFromRhoLimits) {
  const auto thick = slab_from_rho(0.3, semi_infinite);
  EXPECT_DOUBLE_EQ(thick.r, 0.3);
  EXPECT_DOUBLE_EQ(thick.t, 0.0);
  EXPECT_NEAR(thick.bracket, 1.69, 1e-15);
  const auto none = slab_from_rho(0.3, 0.0);
  EXPECT_NEAR(none.r, 0.0, 1e-15);
  EXPECT_NEAR(none.t, 1.0, 1e-15);
  EXPECT_NEAR(none.bracket, 0.0, 1e-15);
}

TEST(Fresnel, SlabMatchesTwoInterfaceStack) {
  const DispersionModel medium = ConstantMedium{1.8, 1.1};
  const DispersionModel slab = LorentzMedium{{{1.0, 2.0, 0.1}}, {{2.0, 0.7, 0.0}}};
  const double xi = 0.9, k = 1.7, ds = 0.35;
  for (Polarization q : kPolarizations) {
    const auto c = slab_rt(q, xi, k, medium, slab, ds);
    const Stack st{{{medium, semi_infinite}, {slab, ds}, {medium, semi_infinite}}};
    EXPECT_NEAR(c.r, compose_reflection(q, xi, k, st), 1e-14);
    EXPECT_NEAR(c.bracket, (1.0 + c.r) * (1.0 + c.r) - c.t * c.t, 1e-13);
  }
}

TEST(Fresnel, ThinSlabLinearisation) {
  const DispersionModel medium = ConstantMedium{1.8, 1.0};
  const DispersionModel slab = ConstantMedium{4.0, 1.3};
  const double xi = 0.5, k = 1.2, ds = 1e-6;
  for (Polarization q : kPolarizations) {
    const auto full = slab_rt(q, xi, k, medium, slab, ds);
    const auto lin = thin_slab_rt(q, xi, k, medium, slab, ds);
    EXPECT_NEAR(full.r, lin.r_lin, 1e-4 * std::abs(lin.r_lin));
    EXPECT_NEAR(full.bracket, lin.bracket_lin, 1e-4 * std::abs(lin.bracket_lin));
  }
}

TEST(Fresnel, QuasistaticLimit) {
  const auto m = make_response(2.0, 1.0);
  const auto l = make_response(7.0, 2.0);
  const double k = 1e7;
  for (Polarization q : kPolarizations) {
    const double exact = interface_r(q, kappa(1.0, k, m.n_squared), kappa(1.0, k, l.n_squared), m, l);
    EXPECT_NEAR(exact, quasistatic_reflection(q, m, l), 1e-10);
  }
}

TEST(Fresnel, RadialRuleReproducesExactKappa) {
  const double xi = 0.8, n2 = 2.5, p = 1.7;
  const double k = std::sqrt(n2) * xi * std::sqrt(p * p - 1.0);
  const auto rule = KappaRule::radial(p, n2, std::sqrt(n2) * xi);
  for (double nl2 : {1.0, 2.5, 9.0}) {
    EXPECT_NEAR(rule(nl2), kappa(xi, k, nl2), 1e-13);
  }
}

TEST(Fresnel, KappaRejectsOrigin) {
  EXPECT_THROW((void)kappa(0.0, 0.0, 1.0), std::invalid_argument);
  EXPECT_THROW((void)kappa(-1.0, 1.0, 1.0), std::invalid_argument);
}
