#include <gtest/gtest.h>

#include <cmath>

#include "vfl/materials.hpp"

using namespace vfl;

TEST(Materials, ConstantMediumIsFrequencyIndependent) {
  const DispersionModel m = ConstantMedium{2.25, 1.5};
  for (double xi : {0.0, 0.3, 40.0}) {
    const auto r = response_at(m, xi);
    EXPECT_DOUBLE_EQ(r.epsilon, 2.25);
    EXPECT_DOUBLE_EQ(r.mu, 1.5);
    EXPECT_DOUBLE_EQ(r.n_squared, 2.25 * 1.5);
  }
}

TEST(Materials, DrudeOnImaginaryAxis) {
  const DispersionModel m = DrudeMetal{3.0, 0.1, {}};
  const auto r = response_at(m, 2.0);
  EXPECT_NEAR(r.epsilon, 1.0 + 9.0 / (2.0 * 2.1), 1e-14);
  EXPECT_DOUBLE_EQ(r.mu, 1.0);
  EXPECT_TRUE(std::isinf(response_at(m, 0.0).epsilon));
  EXPECT_TRUE(static_response(m).conductor());
}

TEST(Materials, LorentzSumsOscillators) {
  const DispersionModel m = LorentzMedium{{{1.0, 2.0, 0.5}, {3.0, 1.0, 0.0}}, {{2.0, 1.0, 0.0}}};
  const double xi = 0.7;
  const auto r = response_at(m, xi);
  const double eps = 1.0 + 4.0 / (1.0 + xi * xi + 0.5 * xi) + 1.0 / (9.0 + xi * xi);
  const double mu = 1.0 + 1.0 / (4.0 + xi * xi);
  EXPECT_NEAR(r.epsilon, eps, 1e-14);
  EXPECT_NEAR(r.mu, mu, 1e-14);
  const auto s = static_response(m);
  EXPECT_NEAR(s.epsilon, 1.0 + 4.0 + 1.0 / 9.0, 1e-14);
}

TEST(Materials, ResponseDecreasesTowardsVacuum) {
  const DispersionModel m = LorentzMedium{{{1.0, 2.0, 0.2}}, {}};
  double prev = response_at(m, 0.0).epsilon;
  for (double xi = 0.1; xi < 100.0; xi *= 1.7) {
    const double e = response_at(m, xi).epsilon;
    EXPECT_LE(e, prev);
    EXPECT_GE(e, 1.0);
    prev = e;
  }
}

TEST(Materials, ValidationRejectsBadParameters) {
  EXPECT_THROW(validate(ConstantMedium{0.5, 1.0}), MaterialError);
  EXPECT_THROW(validate(DrudeMetal{-1.0, 0.0, {}}), MaterialError);
  EXPECT_THROW(validate(LorentzMedium{{{0.0, 1.0, 0.0}}, {}}), MaterialError);
  EXPECT_THROW(validate(LorentzMedium{{{1.0, 1.0, -0.1}}, {}}), MaterialError);
  EXPECT_NO_THROW(validate(PerfectMirror{}));
}

TEST(Materials, PerfectMirrorHasNoResponse) {
  EXPECT_THROW((void)response_at(PerfectMirror{}, 1.0), MaterialError);
  EXPECT_TRUE(is_perfect_mirror(PerfectMirror{MirrorKind::permeable}));
  EXPECT_EQ(perfect_mirror_kind(PerfectMirror{MirrorKind::permeable}), MirrorKind::permeable);
  EXPECT_FALSE(perfect_mirror_kind(vacuum()).has_value());
}

TEST(Materials, NegativeFrequencyRejected) {
  EXPECT_THROW((void)response_at(vacuum(), -1.0), MaterialError);
}

TEST(Materials, TransparencyFrequency) {
  EXPECT_FALSE(transparency_frequency(ConstantMedium{2.0, 1.0}));
  EXPECT_FALSE(transparency_frequency(PerfectMirror{}));
  EXPECT_NEAR(*transparency_frequency(DrudeMetal{4.0, 0.1, {}}), 4.0, 1e-15);
  const auto w = transparency_frequency(LorentzMedium{{{3.0, 4.0, 0.0}}, {}});
  ASSERT_TRUE(w);
  EXPECT_NEAR(*w, 5.0, 1e-14);
}
