#include <benchmark/benchmark.h>

#include "phasebound/ambiguity.hpp"
#include "phasebound/driver.hpp"
#include "phasebound/gen.hpp"

using namespace phasebound;

namespace {

void BM_QuotientDistance(benchmark::State& state) {
  const GridSpec grid = GridSpec::line(static_cast<int>(state.range(0)), 0.05);
  const CounterRng rng(3);
  const SampledField f = suites::gaussian_mixture(grid, rng.substream(1));
  const SampledField g = suites::gaussian_mixture(grid, rng.substream(2));
  const GroupSpec group = GroupSpec::phase_shift_reflect();
  for (auto _ : state) {
    benchmark::DoNotOptimize(quotient_distance(f, g, 0.5, group));
  }
}
BENCHMARK(BM_QuotientDistance)->Arg(256)->Arg(1024)->Arg(4096);

void BM_UnimodularMultiplier(benchmark::State& state) {
  const GridSpec grid = GridSpec::line(static_cast<int>(state.range(0)), 0.1);
  auto [f, g] = overlap_pair(OverlapSpec{grid, 9, 0.5});
  for (auto _ : state) {
    benchmark::DoNotOptimize(unimodular_optimal_multiplier(f, g));
  }
}
BENCHMARK(BM_UnimodularMultiplier)->Arg(256)->Arg(2048);

}  // namespace
