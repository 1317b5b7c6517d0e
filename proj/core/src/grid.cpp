#include "phasebound/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "phasebound/errors.hpp"

namespace phasebound {

GridSpec::GridSpec(std::vector<int> dims, double spacing)
    : dims_(std::move(dims)), spacing_(spacing) {
  if (dims_.empty()) {
    throw ParameterError("GridSpec: dimension must be at least 1");
  }
  if (!(spacing_ > 0.0) || !std::isfinite(spacing_)) {
    throw ParameterError("GridSpec: spacing must be positive and finite");
  }
  size_ = 1;
  for (int n : dims_) {
    if (n < 4 || n % 2 != 0) {
      throw ParameterError("GridSpec: sample counts must be even and >= 4, got " +
                           std::to_string(n));
    }
    size_ *= static_cast<std::size_t>(n);
  }
}

GridSpec GridSpec::line(int samples, double spacing) {
  return GridSpec(std::vector<int>{samples}, spacing);
}

GridSpec GridSpec::square(int samples_per_axis, double spacing) {
  return GridSpec(std::vector<int>{samples_per_axis, samples_per_axis}, spacing);
}

double GridSpec::spatial_cell() const {
  return std::pow(spacing_, dim());
}

double GridSpec::freq_step(int axis) const {
  return 2.0 * std::numbers::pi / (dims_[axis] * spacing_);
}

double GridSpec::freq_cell() const {
  double v = 1.0;
  for (int ax = 0; ax < dim(); ++ax) v *= freq_step(ax);
  return v;
}

double GridSpec::extent(int axis) const {
  return dims_[axis] * spacing_;
}

double GridSpec::spatial_node(int axis, int index) const {
  return (index - dims_[axis] / 2) * spacing_;
}

double GridSpec::freq_node(int axis, int index) const {
  return (index - dims_[axis] / 2) * freq_step(axis);
}

std::size_t GridSpec::flatten(std::span<const int> coords) const {
  std::size_t idx = 0;
  for (int ax = 0; ax < dim(); ++ax) {
    idx = idx * static_cast<std::size_t>(dims_[ax]) + static_cast<std::size_t>(coords[ax]);
  }
  return idx;
}

void GridSpec::unflatten(std::size_t index, std::span<int> coords) const {
  for (int ax = dim() - 1; ax >= 0; --ax) {
    coords[ax] = static_cast<int>(index % static_cast<std::size_t>(dims_[ax]));
    index /= static_cast<std::size_t>(dims_[ax]);
  }
}

double GridSpec::bracket_squared(std::size_t index) const {
  double sum = 1.0;
  for (int ax = dim() - 1; ax >= 0; --ax) {
    const int c = static_cast<int>(index % static_cast<std::size_t>(dims_[ax]));
    index /= static_cast<std::size_t>(dims_[ax]);
    const double xi = freq_node(ax, c);
    sum += xi * xi;
  }
  return sum;
}

bool GridSpec::operator==(const GridSpec& other) const {
  return dims_ == other.dims_ && spacing_ == other.spacing_;
}

std::vector<double> bracket_squared_table(const GridSpec& grid) {
  std::vector<double> table(grid.size());
  const int n = grid.dim();
  std::vector<int> c(n, 0);
  std::vector<double> xi(n);
  for (int ax = 0; ax < n; ++ax) xi[ax] = grid.freq_node(ax, 0);
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    double sum = 1.0;
    for (int ax = 0; ax < n; ++ax) sum += xi[ax] * xi[ax];
    table[idx] = sum;
    for (int ax = n - 1; ax >= 0; --ax) {
      if (++c[ax] < grid.dims()[ax]) {
        xi[ax] = grid.freq_node(ax, c[ax]);
        break;
      }
      c[ax] = 0;
      xi[ax] = grid.freq_node(ax, 0);
    }
  }
  return table;
}

}  // namespace phasebound
