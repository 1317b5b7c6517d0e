#include <benchmark/benchmark.h>

#include "phasebound/field.hpp"
#include "phasebound/gen.hpp"

using namespace phasebound;

namespace {

SampledField make_field(const GridSpec& grid) {
  const CounterRng rng(1);
  std::vector<cplx> values(grid.size());
  for (std::size_t j = 0; j < values.size(); ++j) values[j] = rng.complex_normal(j);
  return SampledField(grid, std::move(values));
}

void BM_ForwardTransform1D(benchmark::State& state) {
  const GridSpec grid = GridSpec::line(static_cast<int>(state.range(0)), 0.05);
  const SampledField f = make_field(grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(forward_transform(f));
  }
  state.SetItemsProcessed(state.iterations() * grid.size());
}
BENCHMARK(BM_ForwardTransform1D)->Arg(256)->Arg(1024)->Arg(4096);

void BM_RoundTrip2D(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const GridSpec grid(std::vector<int>{n, n}, 0.25);
  const SampledField f = make_field(grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(inverse_transform(forward_transform(f)));
  }
  state.SetItemsProcessed(state.iterations() * grid.size());
}
BENCHMARK(BM_RoundTrip2D)->Arg(64)->Arg(128);

}  // namespace
