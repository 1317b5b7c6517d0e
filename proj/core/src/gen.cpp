#include "phasebound/gen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "phasebound/errors.hpp"

namespace phasebound {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t CounterRng::raw(std::uint64_t counter) const {
  return mix64(seed_ + 0x9e3779b97f4a7c15ull * (counter + 1));
}

double CounterRng::uniform(std::uint64_t counter) const {
  return (static_cast<double>(raw(counter) >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::uniform(std::uint64_t counter, double lo, double hi) const {
  return lo + (hi - lo) * uniform(counter);
}

double CounterRng::normal(std::uint64_t counter) const {
  const double u1 = uniform(2 * counter);
  const double u2 = uniform(2 * counter + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

cplx CounterRng::complex_normal(std::uint64_t counter) const {
  const double u1 = uniform(2 * counter);
  const double u2 = uniform(2 * counter + 1);
  const double radius = std::sqrt(-std::log(u1));
  return std::polar(radius, kTwoPi * u2);
}

CounterRng CounterRng::substream(std::uint64_t id) const {
  return CounterRng(mix64(seed_ ^ (0xd6e8feb86659fd93ull * (id + 1))));
}

SampledField gaussian_field(const GaussianSpec& spec) {
  const GridSpec& grid = spec.grid;
  const int n = grid.dim();
  if (!(spec.width > 0.0)) throw ParameterError("gaussian_field: width must be positive");
  if (spec.width < 4.0 * grid.spacing()) {
    throw ParameterError("gaussian_field: width " + std::to_string(spec.width) +
                         " is below the 4h resolution floor");
  }
  for (int ax = 0; ax < n; ++ax) {
    if (spec.width > grid.extent(ax) / 8.0) {
      throw ParameterError("gaussian_field: width " + std::to_string(spec.width) +
                           " exceeds extent/8 on axis " + std::to_string(ax));
    }
  }
  if (!spec.center.empty() && static_cast<int>(spec.center.size()) != n) {
    throw ParameterError("gaussian_field: center size != grid dimension");
  }
  if (!spec.modulation.empty() && static_cast<int>(spec.modulation.size()) != n) {
    throw ParameterError("gaussian_field: modulation size != grid dimension");
  }

  std::vector<cplx> values(grid.size());
  std::vector<int> c(n, 0);
  const double inv_two_w2 = 1.0 / (2.0 * spec.width * spec.width);
  for (std::size_t idx = 0; idx < values.size(); ++idx) {
    double quad = 0.0;
    double phase = 0.0;
    for (int ax = 0; ax < n; ++ax) {
      const double x = grid.spatial_node(ax, c[ax]);
      const double dx = x - (spec.center.empty() ? 0.0 : spec.center[ax]);
      quad += dx * dx;
      if (!spec.modulation.empty()) phase += spec.modulation[ax] * x;
    }
    values[idx] = spec.amplitude * std::exp(-quad * inv_two_w2) * std::polar(1.0, phase);
    for (int ax = n - 1; ax >= 0; --ax) {
      if (++c[ax] < grid.dims()[ax]) break;
      c[ax] = 0;
    }
  }
  return SampledField(grid, std::move(values));
}

SpectralField band_limited_spectrum(const BandSpec& spec) {
  if (spec.mask.grid() != spec.grid) {
    throw StructuralError("band_limited_spectrum: mask grid mismatch");
  }
  if (spec.mask.is_empty()) {
    throw ParameterError("band_limited_spectrum: mask must be nonempty");
  }
  const CounterRng rng(spec.seed);
  std::vector<cplx> values(spec.grid.size(), cplx(0.0, 0.0));
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!spec.mask.test(k)) continue;
    values[k] = spec.real_coefficients ? cplx(spec.amplitude * rng.normal(k), 0.0)
                                       : spec.amplitude * rng.complex_normal(k);
  }
  return SpectralField(spec.grid, std::move(values), spec.mask);
}

SampledField band_limited_random(const BandSpec& spec) {
  return inverse_transform(band_limited_spectrum(spec));
}

SampledField from_spectrum(const GridSpec& grid, std::vector<cplx> spectrum) {
  std::vector<std::uint8_t> bits(spectrum.size());
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    bits[k] = spectrum[k] != cplx(0.0, 0.0) ? 1 : 0;
  }
  SupportMask mask(grid, std::move(bits));
  return inverse_transform(SpectralField(grid, std::move(spectrum), std::move(mask)));
}

std::pair<SupportMask, SupportMask> overlap_masks(const OverlapSpec& spec) {
  const GridSpec& grid = spec.grid;
  const int n = grid.dim();
  if (!(spec.overlap_fraction >= 0.0 && spec.overlap_fraction <= 1.0)) {
    throw ParameterError("overlap_pair: overlap fraction must lie in [0, 1]");
  }
  const int last = n - 1;
  const int N = grid.dims()[last];
  const int bins = spec.bins_per_axis > 0 ? spec.bins_per_axis : std::max(2, N / 8);

  // |A^B| = m, |AvB| = 2K - m along the overlap axis; m/(2K-m) = fraction
  // solves to m = 2K f/(1+f), rounded to the nearest admissible bin count.
  const double f = spec.overlap_fraction;
  const int m = static_cast<int>(std::lround(2.0 * bins * f / (1.0 + f)));
  const int span = 2 * bins - m;
  if (span > N) {
    throw ParameterError("overlap_pair: requested supports span " + std::to_string(span) +
                         " bins on an axis of " + std::to_string(N));
  }
  const int lo = (N - span) / 2;

  // Other axes use a common centered band so the overlap fraction is set
  // purely by the last axis.
  std::vector<int> band_lo(n), band_hi(n);
  for (int ax = 0; ax + 1 < n; ++ax) {
    const int Na = grid.dims()[ax];
    const int ba = std::min(bins, Na);
    band_lo[ax] = (Na - ba) / 2;
    band_hi[ax] = band_lo[ax] + ba;
  }

  SupportMask a = SupportMask::empty(grid);
  SupportMask b = SupportMask::empty(grid);
  std::vector<int> c(n, 0);
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    bool in_band = true;
    for (int ax = 0; ax + 1 < n; ++ax) {
      in_band &= (c[ax] >= band_lo[ax] && c[ax] < band_hi[ax]);
    }
    if (in_band) {
      const int x = c[last];
      a.set(idx, x >= lo && x < lo + bins);
      b.set(idx, x >= lo + bins - m && x < lo + span);
    }
    for (int ax = n - 1; ax >= 0; --ax) {
      if (++c[ax] < grid.dims()[ax]) break;
      c[ax] = 0;
    }
  }
  return {std::move(a), std::move(b)};
}

std::pair<SampledField, SampledField> overlap_pair(const OverlapSpec& spec) {
  auto [mask_a, mask_b] = overlap_masks(spec);
  const CounterRng rng(spec.seed);
  BandSpec f_spec{spec.grid, std::move(mask_a), rng.substream(0x66).seed(), 1.0,
                  spec.real_coefficients};
  BandSpec g_spec{spec.grid, std::move(mask_b), rng.substream(0x67).seed(), 1.0,
                  spec.real_coefficients};
  return {band_limited_random(f_spec), band_limited_random(g_spec)};
}

double boundary_decay_ratio(const SampledField& f) {
  const GridSpec& grid = f.grid();
  const int n = grid.dim();
  double peak = 0.0;
  double boundary = 0.0;
  std::vector<int> c(n, 0);
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const double a = std::abs(f.values()[idx]);
    peak = std::max(peak, a);
    for (int ax = 0; ax < n; ++ax) {
      if (c[ax] == 0 || c[ax] == grid.dims()[ax] - 1) {
        boundary = std::max(boundary, a);
        break;
      }
    }
    for (int ax = n - 1; ax >= 0; --ax) {
      if (++c[ax] < grid.dims()[ax]) break;
      c[ax] = 0;
    }
  }
  return peak > 0.0 ? boundary / peak : 0.0;
}

}  // namespace phasebound
