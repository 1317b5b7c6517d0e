#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace phasebound {

/// Uniform centered grid, the torus surrogate of R^n.
///
/// Spatial nodes per axis:   x_j  = (j - N/2) * h
/// Frequency nodes per axis: xi_k = 2*pi*(k - N/2) / (N*h)
///
/// N even keeps the index map j -> (N - j) mod N an exact realization of
/// x -> -x, and the rectangle rule with weights h^n (spatial) and
/// prod(2*pi/(N_i*h)) (spectral) makes the discrete transform pair exactly
/// unitary.
class GridSpec {
 public:
  /// dims: per-axis sample counts, each even and >= 4; spacing: h > 0.
  GridSpec(std::vector<int> dims, double spacing);

  static GridSpec line(int samples, double spacing);
  static GridSpec square(int samples_per_axis, double spacing);

  int dim() const { return static_cast<int>(dims_.size()); }
  const std::vector<int>& dims() const { return dims_; }
  double spacing() const { return spacing_; }
  std::size_t size() const { return size_; }

  double spatial_cell() const;            ///< h^n
  double freq_step(int axis) const;       ///< 2*pi/(N_i*h)
  double freq_cell() const;               ///< prod of freq steps
  double extent(int axis) const;          ///< N_i*h

  double spatial_node(int axis, int index) const;
  double freq_node(int axis, int index) const;

  std::size_t flatten(std::span<const int> coords) const;
  void unflatten(std::size_t index, std::span<int> coords) const;

  /// 1 + |xi_k|^2 at the frequency node with row-major index k.
  double bracket_squared(std::size_t index) const;

  bool operator==(const GridSpec& other) const;
  bool operator!=(const GridSpec& other) const { return !(*this == other); }

 private:
  std::vector<int> dims_;
  double spacing_;
  std::size_t size_;
};

/// Precomputed table of <xi_k>^2 = 1 + |xi_k|^2 over all frequency nodes.
std::vector<double> bracket_squared_table(const GridSpec& grid);

}  // namespace phasebound
