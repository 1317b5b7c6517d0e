#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "phasebound/grid.hpp"

namespace phasebound {

class SampledField;
class SpectralField;

/// Relative threshold separating detected support from rounding noise.
inline constexpr double kDefaultDetectTau = 1e-12;

/// Characteristic set of frequency bins, one flag per row-major node.
///
/// Masks come in two flavors by provenance: "declared" masks are attached
/// by generators that construct spectra and are exact supports; "detected"
/// masks are thresholded from numerical data. The mask itself does not
/// carry the provenance; the operations that resolve masks for a field
/// pair report it.
class SupportMask {
 public:
  SupportMask(GridSpec grid, std::vector<std::uint8_t> bits);

  static SupportMask empty(const GridSpec& grid);
  static SupportMask full(const GridSpec& grid);

  const GridSpec& grid() const { return grid_; }
  const std::vector<std::uint8_t>& bits() const { return bits_; }
  bool test(std::size_t index) const { return bits_[index] != 0; }
  void set(std::size_t index, bool value) { bits_[index] = value ? 1 : 0; }

  std::size_t count() const;
  /// count * frequency cell volume.
  double measure() const;
  bool is_empty() const { return count() == 0; }

  bool operator==(const SupportMask& other) const;
  bool operator!=(const SupportMask& other) const { return !(*this == other); }

 private:
  GridSpec grid_;
  std::vector<std::uint8_t> bits_;
};

/// Thresholded support: bit_k = (|F_k| > tau_rel * max_j |F_j|).
/// All-false for F = 0. Requires tau_rel in [0, 1).
SupportMask detect_support(const SpectralField& F, double tau_rel = kDefaultDetectTau);

SupportMask intersect(const SupportMask& a, const SupportMask& b);
SupportMask unite(const SupportMask& a, const SupportMask& b);
SupportMask diff(const SupportMask& a, const SupportMask& b);
SupportMask complement(const SupportMask& a);

/// Fourier multiplier M_A = F^{-1} o chi_A F applied to a sampled field.
SampledField apply_multiplier(const SupportMask& a, const SampledField& f);

/// Pointwise chi_A * F on the spectral side.
SpectralField apply_mask(const SupportMask& a, const SpectralField& F);

/// Supports for a pair, declared when both fields carry declared masks,
/// otherwise detected at the given threshold.
struct PairMasks {
  SupportMask f_mask;
  SupportMask g_mask;
  bool declared;
};
PairMasks resolve_pair_masks(const SampledField& f, const SampledField& g,
                             const SpectralField& F, const SpectralField& G,
                             double tau_rel = kDefaultDetectTau);

}  // namespace phasebound
