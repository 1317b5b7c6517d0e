#include "phasebound/field.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "fft_engine.hpp"
#include "phasebound/errors.hpp"

namespace phasebound {

namespace {

void check_values(const GridSpec& grid, const std::vector<cplx>& values, const char* what) {
  if (values.size() != grid.size()) {
    throw StructuralError(std::string(what) + ": value count " +
                          std::to_string(values.size()) + " != grid size " +
                          std::to_string(grid.size()));
  }
  for (const cplx& v : values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw StructuralError(std::string(what) + ": values must be finite");
    }
  }
}

void check_mask_grid(const GridSpec& grid, const SupportMask& mask, const char* what) {
  if (mask.grid() != grid) {
    throw StructuralError(std::string(what) + ": declared mask grid mismatch");
  }
}

// Flips the sign of entries whose coordinate sum is odd; the centering
// factor that turns the centered-node kernel into a plain DFT.
void apply_alternating_signs(std::vector<cplx>& values, const GridSpec& grid) {
  const int n = grid.dim();
  std::vector<int> c(n, 0);
  for (std::size_t idx = 0; idx < values.size(); ++idx) {
    int parity = 0;
    for (int ax = 0; ax < n; ++ax) parity += c[ax];
    if (parity & 1) values[idx] = -values[idx];
    for (int ax = n - 1; ax >= 0; --ax) {
      if (++c[ax] < grid.dims()[ax]) break;
      c[ax] = 0;
    }
  }
}

// (-1)^{sum_i N_i/2}: the residual centering sign common to all outputs.
double half_grid_sign(const GridSpec& grid) {
  int parity = 0;
  for (int n : grid.dims()) parity += n / 2;
  return (parity & 1) ? -1.0 : 1.0;
}

std::optional<SupportMask> combined_mask(const SampledField& a, const SampledField& b) {
  if (a.declared_mask() && b.declared_mask()) {
    return unite(*a.declared_mask(), *b.declared_mask());
  }
  return std::nullopt;
}

}  // namespace

SampledField::SampledField(GridSpec grid, std::vector<cplx> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  check_values(grid_, values_, "SampledField");
}

SampledField::SampledField(GridSpec grid, std::vector<cplx> values, SupportMask declared_mask)
    : SampledField(std::move(grid), std::move(values)) {
  check_mask_grid(grid_, declared_mask, "SampledField");
  declared_mask_ = std::move(declared_mask);
}

void SampledField::set_declared_mask(std::optional<SupportMask> mask) {
  if (mask) check_mask_grid(grid_, *mask, "SampledField");
  declared_mask_ = std::move(mask);
}

SpectralField::SpectralField(GridSpec grid, std::vector<cplx> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  check_values(grid_, values_, "SpectralField");
}

SpectralField::SpectralField(GridSpec grid, std::vector<cplx> values, SupportMask declared_mask)
    : SpectralField(std::move(grid), std::move(values)) {
  check_mask_grid(grid_, declared_mask, "SpectralField");
  declared_mask_ = std::move(declared_mask);
}

void SpectralField::set_declared_mask(std::optional<SupportMask> mask) {
  if (mask) check_mask_grid(grid_, *mask, "SpectralField");
  declared_mask_ = std::move(mask);
}

SpectralField forward_transform(const SampledField& f) {
  const GridSpec& grid = f.grid();
  std::vector<cplx> buf = f.values();
  apply_alternating_signs(buf, grid);
  detail::dft_inplace(buf, grid.dims(), -1);
  apply_alternating_signs(buf, grid);
  const double scale =
      half_grid_sign(grid) * std::pow(2.0 * std::numbers::pi, -0.5 * grid.dim()) *
      grid.spatial_cell();
  for (cplx& v : buf) v *= scale;
  if (f.declared_mask()) return SpectralField(grid, std::move(buf), *f.declared_mask());
  return SpectralField(grid, std::move(buf));
}

SampledField inverse_transform(const SpectralField& F) {
  const GridSpec& grid = F.grid();
  std::vector<cplx> buf = F.values();
  apply_alternating_signs(buf, grid);
  detail::dft_inplace(buf, grid.dims(), +1);
  apply_alternating_signs(buf, grid);
  const double scale =
      half_grid_sign(grid) * std::pow(2.0 * std::numbers::pi, -0.5 * grid.dim()) *
      grid.freq_cell();
  for (cplx& v : buf) v *= scale;
  if (F.declared_mask()) return SampledField(grid, std::move(buf), *F.declared_mask());
  return SampledField(grid, std::move(buf));
}

SampledField circular_shift(const SampledField& f, std::span<const int> cells) {
  const GridSpec& grid = f.grid();
  const int n = grid.dim();
  if (static_cast<int>(cells.size()) != n) {
    throw StructuralError("circular_shift: offset count != grid dimension");
  }
  std::vector<cplx> out(grid.size());
  std::vector<int> c(n, 0), src(n, 0);
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    for (int ax = 0; ax < n; ++ax) {
      const int N = grid.dims()[ax];
      src[ax] = ((c[ax] - cells[ax]) % N + N) % N;
    }
    out[idx] = f.values()[grid.flatten(src)];
    for (int ax = n - 1; ax >= 0; --ax) {
      if (++c[ax] < grid.dims()[ax]) break;
      c[ax] = 0;
    }
  }
  SampledField result(grid, std::move(out));
  result.set_declared_mask(f.declared_mask());
  return result;
}

SampledField conjugate_reflect(const SampledField& f) {
  const GridSpec& grid = f.grid();
  const int n = grid.dim();
  std::vector<cplx> out(grid.size());
  std::vector<int> c(n, 0), src(n, 0);
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    for (int ax = 0; ax < n; ++ax) {
      const int N = grid.dims()[ax];
      src[ax] = (N - c[ax]) % N;
    }
    out[idx] = std::conj(f.values()[grid.flatten(src)]);
    for (int ax = n - 1; ax >= 0; --ax) {
      if (++c[ax] < grid.dims()[ax]) break;
      c[ax] = 0;
    }
  }
  SampledField result(grid, std::move(out));
  // Spectrally this is pointwise conjugation, so the support is unchanged.
  result.set_declared_mask(f.declared_mask());
  return result;
}

SampledField add(const SampledField& a, const SampledField& b) {
  if (a.grid() != b.grid()) throw StructuralError("add: grid mismatch");
  std::vector<cplx> out(a.values());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b.values()[i];
  SampledField result(a.grid(), std::move(out));
  result.set_declared_mask(combined_mask(a, b));
  return result;
}

SampledField subtract(const SampledField& a, const SampledField& b) {
  if (a.grid() != b.grid()) throw StructuralError("subtract: grid mismatch");
  std::vector<cplx> out(a.values());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b.values()[i];
  SampledField result(a.grid(), std::move(out));
  result.set_declared_mask(combined_mask(a, b));
  return result;
}

SampledField scale(const SampledField& f, cplx factor) {
  std::vector<cplx> out(f.values());
  for (cplx& v : out) v *= factor;
  SampledField result(f.grid(), std::move(out));
  result.set_declared_mask(f.declared_mask());
  return result;
}

}  // namespace phasebound
