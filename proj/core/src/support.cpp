#include "phasebound/support.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "phasebound/errors.hpp"
#include "phasebound/field.hpp"

namespace phasebound {

namespace {

void check_same_grid(const SupportMask& a, const SupportMask& b, const char* what) {
  if (a.grid() != b.grid()) {
    throw StructuralError(std::string(what) + ": mask grid mismatch");
  }
}

}  // namespace

SupportMask::SupportMask(GridSpec grid, std::vector<std::uint8_t> bits)
    : grid_(std::move(grid)), bits_(std::move(bits)) {
  if (bits_.size() != grid_.size()) {
    throw StructuralError("SupportMask: bit count " + std::to_string(bits_.size()) +
                          " != grid size " + std::to_string(grid_.size()));
  }
  for (std::uint8_t& b : bits_) b = b ? 1 : 0;
}

SupportMask SupportMask::empty(const GridSpec& grid) {
  return SupportMask(grid, std::vector<std::uint8_t>(grid.size(), 0));
}

SupportMask SupportMask::full(const GridSpec& grid) {
  return SupportMask(grid, std::vector<std::uint8_t>(grid.size(), 1));
}

std::size_t SupportMask::count() const {
  std::size_t n = 0;
  for (std::uint8_t b : bits_) n += b;
  return n;
}

double SupportMask::measure() const {
  return static_cast<double>(count()) * grid_.freq_cell();
}

bool SupportMask::operator==(const SupportMask& other) const {
  return grid_ == other.grid_ && bits_ == other.bits_;
}

SupportMask detect_support(const SpectralField& F, double tau_rel) {
  if (!(tau_rel >= 0.0 && tau_rel < 1.0)) {
    throw ParameterError("detect_support: threshold must lie in [0, 1)");
  }
  double peak = 0.0;
  for (const cplx& v : F.values()) peak = std::max(peak, std::abs(v));
  std::vector<std::uint8_t> bits(F.values().size(), 0);
  if (peak > 0.0) {
    const double cutoff = tau_rel * peak;
    for (std::size_t k = 0; k < bits.size(); ++k) {
      bits[k] = std::abs(F.values()[k]) > cutoff ? 1 : 0;
    }
  }
  return SupportMask(F.grid(), std::move(bits));
}

SupportMask intersect(const SupportMask& a, const SupportMask& b) {
  check_same_grid(a, b, "intersect");
  std::vector<std::uint8_t> bits(a.bits());
  for (std::size_t k = 0; k < bits.size(); ++k) bits[k] &= b.bits()[k];
  return SupportMask(a.grid(), std::move(bits));
}

SupportMask unite(const SupportMask& a, const SupportMask& b) {
  check_same_grid(a, b, "unite");
  std::vector<std::uint8_t> bits(a.bits());
  for (std::size_t k = 0; k < bits.size(); ++k) bits[k] |= b.bits()[k];
  return SupportMask(a.grid(), std::move(bits));
}

SupportMask diff(const SupportMask& a, const SupportMask& b) {
  check_same_grid(a, b, "diff");
  std::vector<std::uint8_t> bits(a.bits());
  for (std::size_t k = 0; k < bits.size(); ++k) bits[k] &= static_cast<std::uint8_t>(1 - b.bits()[k]);
  return SupportMask(a.grid(), std::move(bits));
}

SupportMask complement(const SupportMask& a) {
  std::vector<std::uint8_t> bits(a.bits());
  for (std::uint8_t& b : bits) b = static_cast<std::uint8_t>(1 - b);
  return SupportMask(a.grid(), std::move(bits));
}

SpectralField apply_mask(const SupportMask& a, const SpectralField& F) {
  if (a.grid() != F.grid()) throw StructuralError("apply_mask: grid mismatch");
  std::vector<cplx> out(F.values());
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (!a.test(k)) out[k] = cplx(0.0, 0.0);
  }
  SpectralField result(F.grid(), std::move(out));
  if (F.declared_mask()) {
    result.set_declared_mask(intersect(*F.declared_mask(), a));
  } else {
    result.set_declared_mask(a);
  }
  return result;
}

SampledField apply_multiplier(const SupportMask& a, const SampledField& f) {
  if (a.grid() != f.grid()) throw StructuralError("apply_multiplier: grid mismatch");
  return inverse_transform(apply_mask(a, forward_transform(f)));
}

PairMasks resolve_pair_masks(const SampledField& f, const SampledField& g,
                             const SpectralField& F, const SpectralField& G,
                             double tau_rel) {
  if (f.declared_mask() && g.declared_mask()) {
    return {*f.declared_mask(), *g.declared_mask(), true};
  }
  return {detect_support(F, tau_rel), detect_support(G, tau_rel), false};
}

}  // namespace phasebound
