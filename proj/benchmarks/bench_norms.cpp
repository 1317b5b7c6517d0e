#include <benchmark/benchmark.h>

#include "phasebound/bounds.hpp"
#include "phasebound/driver.hpp"
#include "phasebound/gen.hpp"
#include "phasebound/norms.hpp"

using namespace phasebound;

namespace {

void BM_BesselNorm(benchmark::State& state) {
  const GridSpec grid = GridSpec::line(static_cast<int>(state.range(0)), 0.05);
  const SampledField f = suites::gaussian_mixture(grid, CounterRng(5).substream(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bessel_norm(f, 1.0, 4.0 / 3.0));
  }
}
BENCHMARK(BM_BesselNorm)->Arg(512)->Arg(4096);

void BM_StabilityBound(benchmark::State& state) {
  const GridSpec grid = suites::mixture_grid(static_cast<int>(state.range(0)));
  const CounterRng rng(6);
  const SampledField f = suites::gaussian_mixture(grid, rng.substream(1));
  const SampledField g = suites::gaussian_mixture(grid, rng.substream(2));
  const StabilityParams params(0.5, 1.0, 4.0 / 3.0, grid.dim());
  const GroupSpec group = GroupSpec::phase_shift_reflect();
  for (auto _ : state) {
    benchmark::DoNotOptimize(stability_bound(f, g, params, group));
  }
}
BENCHMARK(BM_StabilityBound)->Arg(1)->Arg(2);

}  // namespace
