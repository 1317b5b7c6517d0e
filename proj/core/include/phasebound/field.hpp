#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "phasebound/grid.hpp"
#include "phasebound/support.hpp"

namespace phasebound {

using cplx = std::complex<double>;

/// Complex samples at the spatial nodes of a grid, row-major.
///
/// A field may carry a declared frequency-support mask recording that it
/// was constructed band-limited: its spectrum vanishes exactly off the
/// mask. Pointwise-linear operations preserve a valid declared mask
/// (union for sums); operations that cannot guarantee one drop it.
class SampledField {
 public:
  SampledField(GridSpec grid, std::vector<cplx> values);
  SampledField(GridSpec grid, std::vector<cplx> values, SupportMask declared_mask);

  const GridSpec& grid() const { return grid_; }
  const std::vector<cplx>& values() const { return values_; }
  std::vector<cplx>& values() { return values_; }

  const std::optional<SupportMask>& declared_mask() const { return declared_mask_; }
  void set_declared_mask(std::optional<SupportMask> mask);

 private:
  GridSpec grid_;
  std::vector<cplx> values_;
  std::optional<SupportMask> declared_mask_;
};

/// Complex samples at the frequency nodes of a grid, row-major.
class SpectralField {
 public:
  SpectralField(GridSpec grid, std::vector<cplx> values);
  SpectralField(GridSpec grid, std::vector<cplx> values, SupportMask declared_mask);

  const GridSpec& grid() const { return grid_; }
  const std::vector<cplx>& values() const { return values_; }
  std::vector<cplx>& values() { return values_; }

  const std::optional<SupportMask>& declared_mask() const { return declared_mask_; }
  void set_declared_mask(std::optional<SupportMask> mask);

 private:
  GridSpec grid_;
  std::vector<cplx> values_;
  std::optional<SupportMask> declared_mask_;
};

/// Discrete realization of F f(xi) = (2pi)^{-n/2} \int e^{-i x.xi} f(x) dx
/// by the rectangle rule: F_k = (2pi)^{-n/2} h^n sum_j e^{-i x_j.xi_k} f_j,
/// computed via an FFT with centering sign factors. Exactly unitary in the
/// discrete inner products induced by the cell volumes.
SpectralField forward_transform(const SampledField& f);

/// Discrete inverse with the conjugate kernel and frequency cell weights;
/// inverse_transform(forward_transform(f)) == f up to rounding.
SampledField inverse_transform(const SpectralField& F);

/// Circular shift by whole cells: out[c] = in[(c - cells) mod N] per axis.
SampledField circular_shift(const SampledField& f, std::span<const int> cells);

/// Exact realization of x -> -x composed with complex conjugation,
/// via the index map j -> (N - j) mod N.
SampledField conjugate_reflect(const SampledField& f);

SampledField add(const SampledField& a, const SampledField& b);
SampledField subtract(const SampledField& a, const SampledField& b);
SampledField scale(const SampledField& f, cplx factor);

}  // namespace phasebound
