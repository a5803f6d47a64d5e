// Micro-benchmarks for the hot paths: jet curvature pipelines, the
// second-variation tensor at a point, and full obstruction integrals.

#include <benchmark/benchmark.h>

#include "eol/curvature.hpp"
#include "eol/deformations.hpp"
#include "eol/obstructions.hpp"
#include "eol/quadrature.hpp"

namespace {

const eol::Point kP{0.7, -0.3, 0.5, 0.4};

void BM_RicciValues(benchmark::State& state) {
  eol::SymTensorField eh = eol::eguchi_hanson();
  for (auto _ : state) {
    eol::Curvature<eol::Jet<2>> c(eh.eval2(kP));
    benchmark::DoNotOptimize(c.ricci());
  }
}
BENCHMARK(BM_RicciValues);

void BM_SecondVariation(benchmark::State& state) {
  eol::OrbifoldPointData d;
  d.lambda = 3.0;
  eol::SymTensorField h2 = eol::h2_from_curvature(d);
  eol::SymTensorField h4 =
      eol::h4_from_asymptotics(eol::eguchi_hanson_bubble());
  eol::SymTensorField e = eol::euclidean_metric();
  for (auto _ : state)
    benchmark::DoNotOptimize(
        eol::traceless_ricci_variations(e, h4, h2, kP).second_hk);
}
BENCHMARK(BM_SecondVariation);

void BM_RadialFlux(benchmark::State& state) {
  eol::OrbifoldPointData d;
  d.lambda = 3.0;
  eol::SymTensorField h2 = eol::h2_from_curvature(d);
  eol::SymTensorField h4 =
      eol::h4_from_asymptotics(eol::eguchi_hanson_bubble());
  eol::FiniteGroup g = eol::group_cyclic(2);
  int order = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        eol::ric2_flux(h4, h2, eol::radial_field(), 1.0, g, order));
}
BENCHMARK(BM_RadialFlux)->Arg(6)->Arg(12);

void BM_SphereRule(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(eol::sphere_rule(1.0, 24));
}
BENCHMARK(BM_SphereRule);

}  // namespace

BENCHMARK_MAIN();
