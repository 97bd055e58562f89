#include <benchmark/benchmark.h>

#include "vfl/forces.hpp"
#include "vfl/fresnel.hpp"
#include "vfl/stress.hpp"

using namespace vfl;

namespace {

Stack four_layers() {
  return Stack{{{ConstantMedium{1.7, 1.0}, semi_infinite},
                {LorentzMedium{{{1.0, 1.5, 0.1}}, {}}, 0.3},
                {ConstantMedium{4.0, 2.0}, 0.5},
                {DrudeMetal{3.0, 0.05, {}}, semi_infinite}}};
}

CavityScene cavity() {
  CavityScene s;
  s.medium = LorentzMedium{{{3.0, 1.0, 0.1}}, {}};
  s.mirror1 = Mirror::half_space(DrudeMetal{3.0, 0.05, {}});
  s.gap1 = 0.7;
  s.slab = {LorentzMedium{{{2.0, 1.5, 0.1}}, {}}, 0.3};
  s.gap2 = 0.4;
  s.mirror2 = Mirror::half_space(LorentzMedium{{{1.0, 2.0, 0.05}}, {}});
  return s;
}

void BM_ComposeReflection(benchmark::State& state) {
  const Stack st = four_layers();
  double xi = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(compose_reflection(Polarization::tm, xi, 1.3, st));
    xi = xi < 4.0 ? xi * 1.001 : 0.5;
  }
}
BENCHMARK(BM_ComposeReflection);

void BM_GMode(benchmark::State& state) {
  LayerContext c;
  c.r_minus = 0.4;
  c.r_plus = -0.6;
  c.thickness = 1.2;
  c.response = make_response(2.5, 1.3);
  double k = 0.2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(g_mode(Polarization::te, 0.7, k, c, 0.5));
    k = k < 5.0 ? k * 1.001 : 0.2;
  }
}
BENCHMARK(BM_GMode);

void BM_ScreenedForce(benchmark::State& state) {
  const CavityScene s = cavity();
  QuadratureSpec spec;
  for (auto _ : state) benchmark::DoNotOptimize(screened_force(s, spec).value);
}
BENCHMARK(BM_ScreenedForce)->Unit(benchmark::kMillisecond);

void BM_SlabForceStress(benchmark::State& state) {
  const CavityScene s = cavity();
  QuadratureSpec spec;
  for (auto _ : state) benchmark::DoNotOptimize(slab_force(s, spec).value);
}
BENCHMARK(BM_SlabForceStress)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
