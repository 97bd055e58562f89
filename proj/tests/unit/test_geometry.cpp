#include <gtest/gtest.h>

#include "vfl/fresnel.hpp"
#include "vfl/geometry.hpp"

using namespace vfl;

namespace {

CavityScene finite_cavity() {
  CavityScene s;
  s.medium = ConstantMedium{1.7, 1.0};
  s.mirror1 = Mirror::half_space(DrudeMetal{3.0, 0.05, {}});
  s.gap1 = 0.7;
  s.slab = {LorentzMedium{{{1.0, 1.5, 0.1}}, {}}, 0.3};
  s.gap2 = 0.4;
  s.mirror2 = Mirror::perfect();
  return s;
}

}  // namespace

TEST(Geometry, SemiInfiniteCavityIsValid) {
  CavityScene s;
  s.slab = {ConstantMedium{2.0, 1.0}, 0.5};
  const auto v = validate_scene(s);
  ASSERT_TRUE(v.ok());
  EXPECT_TRUE(v.value().semi_infinite_cavity());
  EXPECT_FALSE(v.value().mirror1.has_value());
}

TEST(Geometry, NegativeGapIsRejected) {
  CavityScene s;
  s.gap2 = -1.0;
  const auto v = validate_scene(s);
  ASSERT_FALSE(v.ok());
  EXPECT_EQ(v.diagnostics.front().field, "gap2");
  EXPECT_NE(v.diagnostics.front().message.find("negative thickness"), std::string::npos);
  EXPECT_THROW((void)v.value(), SceneError);
}

TEST(Geometry, ZeroThicknessSlabCollapses) {
  CavityScene s = finite_cavity();
  s.slab.thickness = 0.0;
  const auto v = validate_scene(s);
  ASSERT_TRUE(v.ok());
  EXPECT_EQ(v.value().slab.thickness, 0.0);
  EXPECT_EQ(v.value().slab.material.index(), s.medium.index());
}

TEST(Geometry, ValidationIsIdempotent) {
  const auto once = validate_scene(finite_cavity());
  ASSERT_TRUE(once.ok());
  const auto twice = validate_scene(once.value());
  ASSERT_TRUE(twice.ok());
  const auto a = cavity_stack(once.value());
  const auto b = cavity_stack(twice.value());
  ASSERT_EQ(a.layers.size(), b.layers.size());
  for (std::size_t i = 0; i < a.layers.size(); ++i) {
    EXPECT_EQ(a.layers[i].thickness, b.layers[i].thickness);
  }
}

TEST(Geometry, SemiInfiniteInteriorLayerRejected) {
  Stack st{{{vacuum(), semi_infinite}, {ConstantMedium{2.0, 1.0}, semi_infinite},
            {vacuum(), semi_infinite}}};
  EXPECT_FALSE(validate_stack(st).ok());
}

TEST(Geometry, ZeroThicknessLayerDoesNotChangeReflection) {
  const Stack with{{{vacuum(), semi_infinite},
                    {ConstantMedium{3.0, 1.0}, 0.4},
                    {ConstantMedium{5.0, 2.0}, 0.0},
                    {DrudeMetal{2.0, 0.1, {}}, semi_infinite}}};
  const Stack without{{{vacuum(), semi_infinite},
                       {ConstantMedium{3.0, 1.0}, 0.4},
                       {DrudeMetal{2.0, 0.1, {}}, semi_infinite}}};
  const auto v = validate_stack(with);
  ASSERT_TRUE(v.ok());
  for (Polarization q : kPolarizations) {
    const double a = compose_reflection(q, 0.8, 1.3, v.value());
    const double b = compose_reflection(q, 0.8, 1.3, without);
    EXPECT_NEAR(a, b, 1e-12 * std::abs(b));
  }
}

TEST(Geometry, CavityStackOrder) {
  const auto s = validate_scene(finite_cavity()).value();
  const Stack st = cavity_stack(s);
  ASSERT_EQ(st.layers.size(), 5u);
  EXPECT_DOUBLE_EQ(st.layers[1].thickness, 0.7);
  EXPECT_DOUBLE_EQ(st.layers[2].thickness, 0.3);
  EXPECT_DOUBLE_EQ(st.layers[3].thickness, 0.4);
}

TEST(Geometry, NearestMirrorDirection) {
  auto s = finite_cavity();
  EXPECT_EQ(nearest_mirror_direction(s), 1);
  s.gap2 = 2.0;
  EXPECT_EQ(nearest_mirror_direction(s), -1);
  s.gap2 = 0.7;
  EXPECT_EQ(nearest_mirror_direction(s), 0);
  CavityScene semi;
  EXPECT_EQ(nearest_mirror_direction(semi), 1);
}

TEST(Geometry, InterfaceSceneChecks) {
  InterfaceScene s{ConstantMedium{2.0, 1.0}, ConstantMedium{3.0, 1.0}, 0.2, 0.0};
  EXPECT_FALSE(validate_scene(s).ok());
  s.an = 0.1;
  EXPECT_TRUE(validate_scene(s).ok());
  InterfaceScene v{vacuum(), ConstantMedium{3.0, 1.0}, 0.0, 0.5};
  EXPECT_TRUE(validate_scene(v).ok());
}
