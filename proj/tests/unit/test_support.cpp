#include <doctest.h>

#include <cmath>

#include "phasebound/errors.hpp"
#include "phasebound/field.hpp"
#include "phasebound/gen.hpp"
#include "phasebound/norms.hpp"
#include "phasebound/support.hpp"
#include "testutil/oracles.hpp"

using namespace phasebound;

namespace {

SupportMask random_mask(const GridSpec& grid, std::uint64_t seed, double density) {
  const CounterRng rng(seed);
  SupportMask mask = SupportMask::empty(grid);
  for (std::size_t k = 0; k < grid.size(); ++k) mask.set(k, rng.uniform(k) < density);
  return mask;
}

}  // namespace

TEST_CASE("detect_support") {
  const GridSpec grid = GridSpec::line(32, 0.5);
  CHECK(detect_support(SpectralField(grid, std::vector<cplx>(32))).is_empty());

  std::vector<cplx> spectrum(32, cplx(0.0, 0.0));
  spectrum[3] = cplx(1.0, 0.0);
  spectrum[17] = cplx(0.0, -2.0);
  spectrum[30] = cplx(1e-8, 1e-8);
  const SupportMask exact = detect_support(SpectralField(grid, spectrum), 0.0);
  CHECK(exact.count() == 3);
  CHECK(exact.test(3));
  CHECK(exact.test(17));
  CHECK(exact.test(30));

  CHECK_THROWS_AS(detect_support(SpectralField(grid, spectrum), 1.0), ParameterError);
}

TEST_CASE("detect_support measures a gaussian level set") {
  const GridSpec grid = GridSpec::line(256, 0.35);
  std::vector<cplx> values(grid.size());
  for (std::size_t j = 0; j < values.size(); ++j) {
    const double x = grid.spatial_node(0, static_cast<int>(j));
    values[j] = std::exp(-0.5 * x * x);
  }
  const SupportMask mask =
      detect_support(forward_transform(SampledField(grid, std::move(values))), 1e-12);
  // {xi : e^{-xi^2/2} > 1e-12} has measure 2*sqrt(2*12*ln 10)
  const double expected = 2.0 * std::sqrt(2.0 * 12.0 * std::log(10.0));
  CHECK(mask.measure() == doctest::Approx(expected).epsilon(0.05));
}

TEST_CASE("mask algebra") {
  const GridSpec grid = GridSpec::line(64, 0.3);
  const SupportMask a = random_mask(grid, 5, 0.4);
  const SupportMask b = random_mask(grid, 6, 0.3);

  CHECK(intersect(a, complement(a)).is_empty());

  // the four pieces partition the grid
  const SupportMask common = intersect(a, b);
  const SupportMask a_only = diff(a, b);
  const SupportMask b_only = diff(b, a);
  const SupportMask outside = complement(unite(a, b));
  CHECK(intersect(common, a_only).is_empty());
  CHECK(intersect(common, b_only).is_empty());
  CHECK(intersect(a_only, b_only).is_empty());
  CHECK(intersect(outside, unite(a, b)).is_empty());
  CHECK(common.count() + a_only.count() + b_only.count() + outside.count() == grid.size());

  // inclusion-exclusion on measures, counting oracle
  CHECK(unite(a, b).measure() + common.measure() ==
        doctest::Approx(a.measure() + b.measure()).epsilon(1e-14));

  const GridSpec other = GridSpec::line(64, 0.4);
  CHECK_THROWS_AS(intersect(a, SupportMask::empty(other)), StructuralError);
}

TEST_CASE("multiplier basics") {
  const GridSpec grid = GridSpec::line(64, 0.3);
  const CounterRng rng(9);
  std::vector<cplx> values(grid.size());
  for (std::size_t j = 0; j < values.size(); ++j) values[j] = rng.complex_normal(j);
  const SampledField f(grid, values);

  const SampledField full = apply_multiplier(SupportMask::full(grid), f);
  CHECK(oracle::max_abs_diff(full.values(), f.values()) <=
        1e-12 * oracle::max_abs(f.values()));

  const SampledField none = apply_multiplier(SupportMask::empty(grid), f);
  CHECK(oracle::max_abs(none.values()) <= 1e-14 * oracle::max_abs(f.values()));

  const SupportMask a = random_mask(grid, 10, 0.5);
  const SampledField once = apply_multiplier(a, f);
  const SampledField twice = apply_multiplier(a, once);
  CHECK(oracle::max_abs_diff(once.values(), twice.values()) <=
        1e-12 * oracle::max_abs(once.values()));

  // contraction in every Sobolev norm
  for (double s : {-1.0, 0.0, 2.0}) {
    CHECK(sobolev_norm(once, s) <= sobolev_norm(f, s) * (1.0 + 1e-12));
  }
}

TEST_CASE("complementary multipliers add up to the union") {
  const GridSpec grid = GridSpec::line(48, 0.4);
  const CounterRng rng(12);
  std::vector<cplx> values(grid.size());
  for (std::size_t j = 0; j < values.size(); ++j) values[j] = rng.complex_normal(j);
  const SampledField f(grid, values);

  SupportMask a = SupportMask::empty(grid);
  SupportMask b = SupportMask::empty(grid);
  for (std::size_t k = 5; k < 15; ++k) a.set(k, true);
  for (std::size_t k = 20; k < 33; ++k) b.set(k, true);

  const SampledField sum = add(apply_multiplier(a, f), apply_multiplier(b, f));
  const SampledField joint = apply_multiplier(unite(a, b), f);
  CHECK(oracle::max_abs_diff(sum.values(), joint.values()) <=
        1e-12 * oracle::max_abs(joint.values()));
}

TEST_CASE("pythagoras over the declared partition") {
  const GridSpec grid = GridSpec::line(128, 0.2);
  OverlapSpec spec{grid, 77, 0.5};
  auto [f, g] = overlap_pair(spec);
  const SampledField difference = subtract(f, g);

  const SupportMask& fa = *f.declared_mask();
  const SupportMask& ga = *g.declared_mask();
  for (double s : {-1.0, 0.0, 0.7}) {
    const double total = std::pow(sobolev_norm(difference, s), 2);
    const double common = std::pow(sobolev_norm(apply_multiplier(intersect(fa, ga), difference), s), 2);
    const double f_only = std::pow(sobolev_norm(apply_multiplier(diff(fa, ga), f), s), 2);
    const double g_only = std::pow(sobolev_norm(apply_multiplier(diff(ga, fa), g), s), 2);
    CHECK(total == doctest::Approx(common + f_only + g_only).epsilon(1e-10));
  }
}

TEST_CASE("pair masks resolve declared before detected") {
  const GridSpec grid = GridSpec::line(32, 0.5);
  OverlapSpec spec{grid, 3, 0.5};
  auto [f, g] = overlap_pair(spec);
  const SpectralField F = forward_transform(f);
  const SpectralField G = forward_transform(g);
  CHECK(resolve_pair_masks(f, g, F, G).declared);

  SampledField bare = f;
  bare.set_declared_mask(std::nullopt);
  const PairMasks detected = resolve_pair_masks(bare, g, F, G);
  CHECK_FALSE(detected.declared);
  // the detected support of an exactly band-limited field matches its mask
  // up to rounding-level bins
  CHECK(detected.f_mask.count() == f.declared_mask()->count());
}
