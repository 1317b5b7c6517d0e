#include <doctest.h>

#include <cmath>
#include <numbers>

#include "phasebound/ambiguity.hpp"
#include "phasebound/driver.hpp"
#include "phasebound/gen.hpp"
#include "phasebound/norms.hpp"
#include "testutil/oracles.hpp"

using namespace phasebound;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

SampledField random_field(const GridSpec& grid, std::uint64_t seed) {
  const CounterRng rng(seed);
  std::vector<cplx> values(grid.size());
  for (std::size_t j = 0; j < values.size(); ++j) values[j] = rng.complex_normal(j);
  return SampledField(grid, std::move(values));
}

// ||f - e^{i theta} T_m g||_{H^s} by direct evaluation, no closed form.
double direct_distance(const SampledField& f, const SampledField& g, double s, double theta,
                       const std::vector<int>& shift, bool reflect) {
  AmbiguityElement e = AmbiguityElement::identity(f.grid().dim());
  e.theta = theta;
  if (!shift.empty()) e.shift = shift;
  e.reflect = reflect;
  return sobolev_norm(subtract(f, apply_element(e, g)), s);
}

}  // namespace

TEST_CASE("identity element acts bitwise") {
  const GridSpec grid = GridSpec::line(32, 0.4);
  const SampledField f = random_field(grid, 1);
  const SampledField same = apply_element(AmbiguityElement::identity(1), f);
  CHECK(oracle::max_abs_diff(same.values(), f.values()) == 0.0);
}

TEST_CASE("theta = pi negates exactly") {
  const GridSpec grid = GridSpec::line(16, 0.5);
  const SampledField f = random_field(grid, 2);
  AmbiguityElement e = AmbiguityElement::identity(1);
  e.theta = std::numbers::pi;
  const SampledField neg = apply_element(e, f);
  double worst = 0.0;
  for (std::size_t j = 0; j < f.values().size(); ++j) {
    worst = std::max(worst, std::abs(neg.values()[j] + f.values()[j]));
  }
  CHECK(worst <= 1e-15 * oracle::max_abs(f.values()));
}

TEST_CASE("whole-cell shift equals the index rotation oracle") {
  const GridSpec grid(std::vector<int>{8, 6}, 0.7);
  const SampledField f = random_field(grid, 3);
  AmbiguityElement e = AmbiguityElement::identity(2);
  e.shift = {3, 5};
  const SampledField shifted = apply_element(e, f);
  std::vector<int> c(2), src(2);
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    grid.unflatten(idx, c);
    src[0] = ((c[0] - 3) % 8 + 8) % 8;
    src[1] = ((c[1] - 5) % 6 + 6) % 6;
    CHECK(shifted.values()[idx] == f.values()[grid.flatten(src)]);
  }
}

TEST_CASE("elements preserve spectral magnitudes and Sobolev norms") {
  const GridSpec grid = GridSpec::line(64, 0.25);
  const SampledField f = random_field(grid, 4);
  const SpectralField F = forward_transform(f);

  AmbiguityElement e = AmbiguityElement::identity(1);
  e.theta = 1.234;
  e.shift = {17};
  e.reflect = true;
  SUBCASE("whole-cell") {}
  SUBCASE("fractional") { e.tau_frac = {0.37 * grid.spacing()}; }

  const SampledField pf = apply_element(e, f);
  const SpectralField PF = forward_transform(pf);
  double worst = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    worst = std::max(worst, std::abs(std::abs(PF.values()[k]) - std::abs(F.values()[k])));
  }
  CHECK(worst <= 1e-12 * oracle::max_abs(F.values()));

  for (double s : {-1.0, 0.0, 0.5, 2.0}) {
    CHECK(sobolev_norm(pf, s) == doctest::Approx(sobolev_norm(f, s)).epsilon(1e-12));
  }
}

TEST_CASE("optimal phase: closed form against a dense grid") {
  const GridSpec grid = GridSpec::line(64, 0.2);
  const SampledField f = random_field(grid, 5);

  SUBCASE("exact phase match") {
    // g = i f: the optimum makes e^{i theta} i = 1
    const SampledField g = scale(f, cplx(0.0, 1.0));
    const PhaseOptimum opt = optimal_phase(f, g, 0.5);
    CHECK(opt.distance <= 1e-12 * sobolev_norm(f, 0.5));
    CHECK(std::abs(std::polar(1.0, opt.theta) * cplx(0.0, 1.0) - cplx(1.0, 0.0)) <= 1e-12);
  }

  SUBCASE("orthogonal spectra") {
    const GridSpec small = GridSpec::line(32, 0.5);
    std::vector<cplx> sf(small.size(), cplx(0.0, 0.0));
    std::vector<cplx> sg(small.size(), cplx(0.0, 0.0));
    sf[4] = cplx(1.0, 0.5);
    sg[20] = cplx(-0.3, 0.8);
    const SampledField f2 = inverse_transform(SpectralField(small, sf));
    const SampledField g2 = inverse_transform(SpectralField(small, sg));
    const double s = 1.0;
    const PhaseOptimum opt = optimal_phase(f2, g2, s);
    const double expected =
        std::sqrt(std::pow(sobolev_norm(f2, s), 2) + std::pow(sobolev_norm(g2, s), 2));
    CHECK(opt.distance == doctest::Approx(expected).epsilon(1e-12));
  }

  SUBCASE("random pair against 1e5 equispaced angles") {
    const SampledField g = random_field(grid, 6);
    const double s = -0.5;
    const PhaseOptimum opt = optimal_phase(f, g, s);
    double best = 1e300;
    for (int i = 0; i < 100000; ++i) {
      best = std::min(best, direct_distance(f, g, s, kTwoPi * i / 100000.0, {}, false));
    }
    CHECK(opt.distance <= best * (1.0 + 1e-12));
    CHECK(opt.distance == doctest::Approx(best).epsilon(1e-8));
  }
}

TEST_CASE("quotient distance") {
  const GridSpec grid = GridSpec::line(64, 0.2);
  const SampledField f = random_field(grid, 7);

  SUBCASE("identity-only group reproduces the plain distance bitwise") {
    const SampledField g = random_field(grid, 8);
    const QuotientResult q =
        quotient_distance(f, g, 0.5, GroupSpec::identity_only());
    CHECK(q.distance == sobolev_norm(subtract(f, g), 0.5));
    CHECK(q.argmin.is_identity());
  }

  SUBCASE("planted symmetry is recovered") {
    AmbiguityElement planted = AmbiguityElement::identity(1);
    planted.theta = 2.17;
    planted.shift = {23};
    planted.reflect = true;
    const SampledField g = apply_element(planted, f);
    const QuotientResult q =
        quotient_distance(f, g, 0.0, GroupSpec::phase_shift_reflect());
    CHECK(q.distance <= 1e-10 * sobolev_norm(f, 0.0));
    CHECK(q.argmin.reflect);
  }

  SUBCASE("exhaustive shift x phase oracle") {
    const SampledField g = random_field(grid, 9);
    const double s = 0.5;
    const QuotientResult q = quotient_distance(f, g, s, GroupSpec::phase_shift());
    double best = 1e300;
    for (int m = 0; m < grid.dims()[0]; ++m) {
      for (int i = 0; i < 10000; ++i) {
        best = std::min(best, direct_distance(f, g, s, kTwoPi * i / 10000.0, {m}, false));
      }
    }
    CHECK(q.distance == doctest::Approx(best).epsilon(1e-8));
    CHECK(q.distance <= best * (1.0 + 1e-12));
    CHECK(q.distance <= sobolev_norm(subtract(f, g), s) * (1.0 + 1e-15));
  }

  SUBCASE("enlarging the group never increases the distance") {
    const SampledField g = random_field(grid, 10);
    const double s = 1.0;
    const double d_id = quotient_distance(f, g, s, GroupSpec::identity_only()).distance;
    const double d_phase = quotient_distance(f, g, s, GroupSpec::phase_only()).distance;
    const double d_shift = quotient_distance(f, g, s, GroupSpec::phase_shift()).distance;
    const double d_all = quotient_distance(f, g, s, GroupSpec::phase_shift_reflect()).distance;
    CHECK(d_phase <= d_id * (1.0 + 1e-12));
    CHECK(d_shift <= d_phase * (1.0 + 1e-12));
    CHECK(d_all <= d_shift * (1.0 + 1e-12));
  }

  SUBCASE("pseudometric symmetry") {
    const SampledField g = random_field(grid, 11);
    for (const GroupSpec& group : {GroupSpec::phase_only(), GroupSpec::phase_shift(),
                                   GroupSpec::phase_shift_reflect()}) {
      const double dfg = quotient_distance(f, g, 0.5, group).distance;
      const double dgf = quotient_distance(g, f, 0.5, group).distance;
      CHECK(std::abs(dfg - dgf) <=
            1e-8 * (sobolev_norm(f, 0.5) + sobolev_norm(g, 0.5)));
    }
  }

  SUBCASE("2-d planted shift with subgrid refinement disabled and enabled") {
    const GridSpec grid2(std::vector<int>{16, 16}, 0.5);
    const SampledField f2 = random_field(grid2, 12);
    AmbiguityElement planted = AmbiguityElement::identity(2);
    planted.theta = 0.4;
    planted.shift = {5, 11};
    const SampledField g2 = apply_element(planted, f2);
    for (bool refine : {false, true}) {
      const QuotientResult q =
          quotient_distance(f2, g2, 0.0, GroupSpec::phase_shift(), QuotientOptions{refine});
      CHECK(q.distance <= 1e-10 * sobolev_norm(f2, 0.0));
      CHECK(q.argmin.shift == std::vector<int>{(16 - 5) % 16, (16 - 11) % 16});
    }
  }
}

TEST_CASE("subgrid refinement recovers a fractional planted shift") {
  const GridSpec grid = GridSpec::line(128, 0.2);
  GaussianSpec spec{grid};
  spec.width = 1.2;
  spec.modulation = {1.5};
  const SampledField f = gaussian_field(spec);
  AmbiguityElement planted = AmbiguityElement::identity(1);
  planted.shift = {9};
  planted.tau_frac = {0.31 * grid.spacing()};
  planted.theta = 1.0;
  const SampledField g = apply_element(planted, f);

  const QuotientResult coarse =
      quotient_distance(f, g, 0.0, GroupSpec::phase_shift(), QuotientOptions{false});
  const QuotientResult fine =
      quotient_distance(f, g, 0.0, GroupSpec::phase_shift(), QuotientOptions{true});
  CHECK(fine.distance <= coarse.distance * (1.0 + 1e-12));
  CHECK(fine.distance <= 1e-4 * sobolev_norm(f, 0.0));
  CHECK(fine.argmin.has_fractional_shift());
}

TEST_CASE("appendix-B multiplier") {
  const GridSpec grid = GridSpec::line(128, 0.2);

  SUBCASE("negated spectrum gives zero distance") {
    OverlapSpec spec{grid, 21, 1.0};
    const SampledField f = overlap_pair(spec).first;
    const SampledField g = scale(f, cplx(-1.0, 0.0));
    const UnimodularResult result = unimodular_optimal_multiplier(f, g);
    CHECK(result.distance <= 1e-12 * lp_norm(f, 2.0));
  }

  SUBCASE("g = f gives the constant multiplier off the zero set") {
    OverlapSpec spec{grid, 22, 1.0};
    const SampledField f = overlap_pair(spec).first;
    const UnimodularResult result = unimodular_optimal_multiplier(f, f);
    CHECK(result.distance <= 1e-12 * lp_norm(f, 2.0));
    for (std::size_t k = 0; k < grid.size(); ++k) {
      if (f.declared_mask()->test(k)) {
        CHECK(std::abs(result.multiplier.values()[k] - cplx(1.0, 0.0)) <= 1e-12);
      }
    }
  }

  SUBCASE("identity between the two distances on overlapping spectra") {
    OverlapSpec spec{grid, 23, 0.6};
    auto [f, g] = overlap_pair(spec);
    const UnimodularResult result = unimodular_optimal_multiplier(f, g);
    // independent evaluation of || |fhat| - |ghat| ||_2
    const std::vector<cplx> F = oracle::direct_forward(grid, f.values());
    const std::vector<cplx> G = oracle::direct_forward(grid, g.values());
    double mag2 = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const double d = std::abs(F[k]) - std::abs(G[k]);
      mag2 += grid.freq_cell() * d * d;
    }
    CHECK(result.distance == doctest::Approx(std::sqrt(mag2)).epsilon(1e-10));
    for (const cplx& a : result.multiplier.values()) {
      CHECK(std::abs(a) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("appendix-B dominance under every parametric group") {
  const GridSpec grid = GridSpec::line(96, 0.2);
  OverlapSpec spec{grid, 31, 0.5};
  auto [f, g] = overlap_pair(spec);
  const double s = 0.5;
  // H^s-weighted magnitude distance lower-bounds every quotient distance
  const SpectralField F = forward_transform(f);
  const SpectralField G = forward_transform(g);
  double mag2 = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double d = std::abs(F.values()[k]) - std::abs(G.values()[k]);
    mag2 += grid.freq_cell() * std::pow(grid.bracket_squared(k), s) * d * d;
  }
  const double floor = std::sqrt(mag2);
  for (const GroupSpec& group :
       {GroupSpec::identity_only(), GroupSpec::phase_only(), GroupSpec::phase_shift(),
        GroupSpec::phase_shift_reflect()}) {
    CHECK(floor <= quotient_distance(f, g, s, group).distance * (1.0 + 1e-10));
  }
}

TEST_CASE("group spec parsing") {
  CHECK(GroupSpec::parse("id").is_identity_only());
  CHECK(GroupSpec::parse("phase").global_phase);
  CHECK(GroupSpec::parse("phase+shift").translations);
  CHECK(GroupSpec::parse("phase+shift+reflect").conjugate_reflection);
  CHECK_THROWS_AS(GroupSpec::parse("dihedral"), ParameterError);
  CHECK(GroupSpec::phase_only().subset_of(GroupSpec::phase_shift()));
  CHECK_FALSE(GroupSpec::phase_shift().subset_of(GroupSpec::phase_only()));
}
