#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "phasebound/field.hpp"

namespace phasebound {

/// Counter-based pseudo-random stream: every draw is a pure function of
/// (seed, counter), so parallel or out-of-order generation is bitwise
/// identical to sequential generation. splitmix64-style mixing; not for
/// cryptography.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t raw(std::uint64_t counter) const;
  /// Uniform in the open interval (0, 1).
  double uniform(std::uint64_t counter) const;
  /// Uniform in [lo, hi).
  double uniform(std::uint64_t counter, double lo, double hi) const;
  /// Standard real normal; consumes counters 2c and 2c+1.
  double normal(std::uint64_t counter) const;
  /// Standard circular complex normal, E|z|^2 = 1; consumes 2c and 2c+1.
  cplx complex_normal(std::uint64_t counter) const;
  /// Derived stream for a substream id (independent counters).
  CounterRng substream(std::uint64_t id) const;

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

/// Closed-form samples of A exp(-(x-c)^2 / (2 w^2)) exp(i k.x).
/// The same entry point serves the plain and the modulated family.
struct GaussianSpec {
  GridSpec grid;
  cplx amplitude{1.0, 0.0};
  std::vector<double> center;      ///< defaults to the origin
  double width = 1.0;
  std::vector<double> modulation;  ///< spectral center k; defaults to zero
};
SampledField gaussian_field(const GaussianSpec& spec);

/// Independent complex (or real) Gaussian coefficient per in-mask bin,
/// drawn from the counter stream keyed by the bin index; zero exactly off
/// the mask. The returned field carries the declared mask.
struct BandSpec {
  GridSpec grid;
  SupportMask mask;
  std::uint64_t seed = 0;
  double amplitude = 1.0;
  bool real_coefficients = false;
};
SpectralField band_limited_spectrum(const BandSpec& spec);
SampledField band_limited_random(const BandSpec& spec);

/// Field from an explicit spectrum; the declared mask is its exact
/// nonzero pattern.
SampledField from_spectrum(const GridSpec& grid, std::vector<cplx> spectrum);

/// A band-limited pair whose declared supports overlap by the requested
/// fraction, |A^B| / |AvB| = fraction up to one bin. Fraction 0 gives
/// disjoint supports, fraction 1 equal supports.
struct OverlapSpec {
  GridSpec grid;
  std::uint64_t seed = 0;
  double overlap_fraction = 0.5;
  int bins_per_axis = 0;  ///< extent of each support per axis; 0 = N/8
  bool real_coefficients = false;
};
std::pair<SampledField, SampledField> overlap_pair(const OverlapSpec& spec);

/// The two interval masks behind overlap_pair, without drawing values.
std::pair<SupportMask, SupportMask> overlap_masks(const OverlapSpec& spec);

/// max |f| over boundary nodes divided by max |f|; the decay discipline
/// gaussian-family suite fields must keep below 1e-12.
double boundary_decay_ratio(const SampledField& f);

}  // namespace phasebound
