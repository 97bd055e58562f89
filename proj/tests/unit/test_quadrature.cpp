#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "vfl/quadrature.hpp"

using namespace vfl;

TEST(Quadrature, FiniteIntervalPolynomialIsExact) {
  const auto r = integrate_interval([](double x) { return x * x * x - 2.0 * x; }, -1.0, 2.0, {});
  EXPECT_NEAR(r.value, 15.0 / 4.0 - 3.0, 1e-14);
  EXPECT_TRUE(r.converged);
}

TEST(Quadrature, HalfLineExponential) {
  for (HalfLineMap map : {HalfLineMap::rational, HalfLineMap::exponential}) {
    HalfLineRule rule;
    rule.map = map;
    rule.rel_tol = 1e-12;
    const auto r = integrate_halfline([](double x) { return std::exp(-x); }, 0.0, rule);
    EXPECT_NEAR(r.value, 1.0, 1e-12);
    EXPECT_TRUE(r.converged);
    EXPECT_EQ(r.status, QuadratureStatus::converged);
  }
}

TEST(Quadrature, HalfLineAlgebraicDecay) {
  HalfLineRule rule;
  rule.rel_tol = 1e-10;
  const auto r = integrate_halfline([](double x) { return 1.0 / (1.0 + x * x); }, 0.0, rule);
  EXPECT_NEAR(r.value, std::numbers::pi / 2.0, 1e-10);
}

TEST(Quadrature, BoseIntegral) {
  HalfLineRule rule;
  rule.rel_tol = 1e-11;
  const auto r = integrate_halfline(
      [](double x) { return x == 0.0 ? 0.0 : x * x * x / std::expm1(x); }, 0.0, rule);
  const double pi = std::numbers::pi;
  EXPECT_NEAR(r.value, pi * pi * pi * pi / 15.0, 1e-10);
}

TEST(Quadrature, ShiftedLowerLimit) {
  const auto r = integrate_halfline([](double p) { return 1.0 / (p * p * p * p); }, 1.0, {1e-12});
  EXPECT_NEAR(r.value, 1.0 / 3.0, 1e-12);
}

TEST(Quadrature, NonFiniteIsReported) {
  const auto r = integrate_interval(
      [](double x) { return x > 0.5 ? std::numeric_limits<double>::quiet_NaN() : 1.0; }, 0.0, 1.0,
      {});
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.status, QuadratureStatus::non_finite);
  EXPECT_GT(r.failure_location, 0.5);
}

TEST(Quadrature, SubdivisionLimitIsReported) {
  HalfLineRule rule;
  rule.rel_tol = 1e-14;
  rule.max_subdivisions = 3;
  const auto r = integrate_interval([](double x) { return std::sin(50.0 * x); }, 0.0, 10.0, rule);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.status, QuadratureStatus::max_subdivisions);
  EXPECT_TRUE(std::isfinite(r.value));
}

TEST(Quadrature, SeparableSpectralIntegral) {
  const auto r = integrate_spectral_2d(
      [](double x, double y) { return std::exp(-x) * y * std::exp(-2.0 * y); }, {1e-10}, {1e-12});
  EXPECT_NEAR(r.value, 0.25, 1e-9);
  EXPECT_TRUE(r.converged);
  EXPECT_GT(r.evaluations, 0);
}

TEST(Quadrature, CoupledSpectralIntegral) {
  const auto r = integrate_spectral_2d(
      [](double x, double y) { return std::exp(-x - (1.0 + x) * y); }, {1e-10}, {1e-12});
  // e E1(1)
  EXPECT_NEAR(r.value, 0.596347362323194074, 1e-9);
}

TEST(Quadrature, SpecScales) {
  QuadratureSpec spec;
  EXPECT_DOUBLE_EQ(spec.outer(3.0).scale, 3.0);
  spec.outer_scale = 0.5;
  EXPECT_DOUBLE_EQ(spec.outer(3.0).scale, 0.5);
  EXPECT_DOUBLE_EQ(spec.inner(2.0).rel_tol, spec.rel_tol_inner);
}
