#include <doctest.h>

#include <cmath>
#include <numbers>

#include "phasebound/errors.hpp"
#include "phasebound/field.hpp"
#include "phasebound/gen.hpp"
#include "testutil/oracles.hpp"

using namespace phasebound;

namespace {

SampledField random_field(const GridSpec& grid, std::uint64_t seed) {
  const CounterRng rng(seed);
  std::vector<cplx> values(grid.size());
  for (std::size_t j = 0; j < values.size(); ++j) values[j] = rng.complex_normal(j);
  return SampledField(grid, std::move(values));
}

double parseval_gap(const SampledField& f, const SpectralField& F) {
  double spatial = 0.0, spectral = 0.0;
  for (const cplx& v : f.values()) spatial += std::norm(v);
  for (const cplx& v : F.values()) spectral += std::norm(v);
  spatial *= f.grid().spatial_cell();
  spectral *= F.grid().freq_cell();
  return std::abs(spatial - spectral) / spatial;
}

}  // namespace

TEST_CASE("structural validation") {
  const GridSpec grid = GridSpec::line(8, 1.0);
  CHECK_THROWS_AS(SampledField(grid, std::vector<cplx>(7)), StructuralError);
  std::vector<cplx> bad(8);
  bad[3] = cplx(std::nan(""), 0.0);
  CHECK_THROWS_AS(SampledField(grid, std::move(bad)), StructuralError);
}

TEST_CASE("forward of zero is zero") {
  const GridSpec grid = GridSpec::line(16, 0.4);
  const SpectralField F = forward_transform(SampledField(grid, std::vector<cplx>(16)));
  CHECK(oracle::max_abs(F.values()) == 0.0);
}

TEST_CASE("gaussian is the self-transform") {
  const GridSpec grid = GridSpec::line(256, 0.1);
  std::vector<cplx> values(grid.size());
  for (std::size_t j = 0; j < values.size(); ++j) {
    const double x = grid.spatial_node(0, static_cast<int>(j));
    values[j] = std::exp(-0.5 * x * x);
  }
  const SpectralField F = forward_transform(SampledField(grid, std::move(values)));
  double worst = 0.0;
  for (std::size_t k = 0; k < F.values().size(); ++k) {
    const double xi = grid.freq_node(0, static_cast<int>(k));
    worst = std::max(worst, std::abs(F.values()[k] - cplx(std::exp(-0.5 * xi * xi), 0.0)));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("forward matches the direct-summation oracle") {
  for (const GridSpec& grid :
       {GridSpec::line(8, 1.0), GridSpec::line(12, 0.3), GridSpec(std::vector<int>{8, 12}, 0.5)}) {
    const SampledField f = random_field(grid, 7 + grid.size());
    const SpectralField F = forward_transform(f);
    const std::vector<cplx> expected = oracle::direct_forward(grid, f.values());
    CHECK(oracle::max_abs_diff(F.values(), expected) <= 1e-12 * oracle::max_abs(expected));
  }
}

TEST_CASE("inverse matches the direct-summation oracle on a single bin") {
  const GridSpec grid = GridSpec::line(16, 0.7);
  std::vector<cplx> spectrum(grid.size(), cplx(0.0, 0.0));
  spectrum[11] = cplx(0.3, -1.2);
  const SampledField f = inverse_transform(SpectralField(grid, spectrum));
  const std::vector<cplx> expected = oracle::direct_inverse(grid, spectrum);
  CHECK(oracle::max_abs_diff(f.values(), expected) <= 1e-12 * oracle::max_abs(expected));
  // a single frequency node yields a plane wave of constant magnitude
  const double mag = std::abs(f.values()[0]);
  for (const cplx& v : f.values()) CHECK(std::abs(v) == doctest::Approx(mag).epsilon(1e-12));
}

TEST_CASE("round trip and Parseval") {
  for (const GridSpec& grid :
       {GridSpec::line(64, 0.2), GridSpec::line(250, 0.11), GridSpec(std::vector<int>{16, 24}, 0.3)}) {
    const SampledField f = random_field(grid, grid.size());
    const SpectralField F = forward_transform(f);
    CHECK(parseval_gap(f, F) <= 1e-12);
    const SampledField back = inverse_transform(F);
    CHECK(oracle::max_abs_diff(back.values(), f.values()) <=
          1e-12 * oracle::max_abs(f.values()));
  }
}

TEST_CASE("inverse of zero is zero") {
  const GridSpec grid = GridSpec::line(8, 1.0);
  const SampledField f = inverse_transform(SpectralField(grid, std::vector<cplx>(8)));
  CHECK(oracle::max_abs(f.values()) == 0.0);
}

TEST_CASE("linearity") {
  const GridSpec grid = GridSpec::line(48, 0.25);
  const SampledField f = random_field(grid, 1);
  const SampledField g = random_field(grid, 2);
  const cplx alpha(0.7, -0.4), beta(-1.1, 0.2);
  const SpectralField lhs = forward_transform(add(scale(f, alpha), scale(g, beta)));
  const SpectralField Ff = forward_transform(f);
  const SpectralField Fg = forward_transform(g);
  std::vector<cplx> rhs(grid.size());
  for (std::size_t k = 0; k < rhs.size(); ++k) {
    rhs[k] = alpha * Ff.values()[k] + beta * Fg.values()[k];
  }
  CHECK(oracle::max_abs_diff(lhs.values(), rhs) <= 1e-12 * oracle::max_abs(rhs));
}

TEST_CASE("translation becomes modulation") {
  const GridSpec grid = GridSpec::line(32, 0.5);
  const SampledField f = random_field(grid, 3);
  const int m = 5;
  const std::vector<int> cells{m};
  const SpectralField shifted = forward_transform(circular_shift(f, cells));
  const SpectralField F = forward_transform(f);
  double worst = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double xi = grid.freq_node(0, static_cast<int>(k));
    const cplx expected = F.values()[k] * std::polar(1.0, -m * grid.spacing() * xi);
    worst = std::max(worst, std::abs(shifted.values()[k] - expected));
  }
  CHECK(worst <= 1e-12 * oracle::max_abs(F.values()));
}

TEST_CASE("conjugate reflection is a spectral conjugation and an involution") {
  const GridSpec grid(std::vector<int>{8, 6}, 0.6);
  const SampledField f = random_field(grid, 4);
  const SampledField rf = conjugate_reflect(f);
  const SpectralField F = forward_transform(f);
  const SpectralField RF = forward_transform(rf);
  double worst = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    worst = std::max(worst, std::abs(RF.values()[k] - std::conj(F.values()[k])));
  }
  CHECK(worst <= 1e-12 * oracle::max_abs(F.values()));
  // exact involution at the index level
  const SampledField back = conjugate_reflect(rf);
  CHECK(oracle::max_abs_diff(back.values(), f.values()) == 0.0);
}

TEST_CASE("grid mismatch is structural") {
  const SampledField a = random_field(GridSpec::line(8, 1.0), 5);
  const SampledField b = random_field(GridSpec::line(8, 0.5), 6);
  CHECK_THROWS_AS(add(a, b), StructuralError);
  CHECK_THROWS_AS(subtract(a, b), StructuralError);
}
