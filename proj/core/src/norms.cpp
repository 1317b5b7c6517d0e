#include "phasebound/norms.hpp"

#include <algorithm>
#include <cmath>

#include "phasebound/bounds.hpp"
#include "phasebound/errors.hpp"

namespace phasebound {

namespace {

double lp_of_values(const std::vector<cplx>& values, double cell, const Exponent& p) {
  if (p.is_infinite()) {
    double best = 0.0;
    for (const cplx& v : values) best = std::max(best, std::abs(v));
    return best;
  }
  const double pv = p.value();
  double sum = 0.0;
  if (pv == 2.0) {
    for (const cplx& v : values) sum += std::norm(v);
  } else if (pv == 1.0) {
    for (const cplx& v : values) sum += std::abs(v);
  } else {
    for (const cplx& v : values) sum += std::pow(std::abs(v), pv);
  }
  return std::pow(cell * sum, 1.0 / pv);
}

}  // namespace

StabilityParams::StabilityParams(double s_, double t_, double p_, int dim_)
    : s(s_), t(t_), p(p_), dim(dim_) {
  if (!std::isfinite(s) || !std::isfinite(t)) {
    throw ParameterError("StabilityParams: s and t must be finite");
  }
  if (!(p >= 1.0 && p <= 2.0)) {
    throw ParameterError("StabilityParams: p must lie in [1, 2]");
  }
  if (dim < 1) {
    throw ParameterError("StabilityParams: dimension must be at least 1");
  }
}

Exponent StabilityParams::p_conjugate() const { return Exponent(p).conjugate(); }

Exponent StabilityParams::holder_q() const { return p_conjugate().half(); }

Exponent StabilityParams::coefficient_exponent() const {
  if (p == 2.0) return Exponent::infinity();
  return Exponent(p / (2.0 - p));
}

double bracket(std::span<const double> xi) {
  double sum = 1.0;
  for (double v : xi) sum += v * v;
  return std::sqrt(sum);
}

double lp_norm(const SampledField& f, const Exponent& p) {
  return lp_of_values(f.values(), f.grid().spatial_cell(), p);
}

double lp_norm(const SampledField& f, double p) { return lp_norm(f, Exponent(p)); }

double lp_norm(const SpectralField& F, const Exponent& p) {
  return lp_of_values(F.values(), F.grid().freq_cell(), p);
}

double lp_norm(const SpectralField& F, double p) { return lp_norm(F, Exponent(p)); }

double sobolev_norm(const SpectralField& F, double s) {
  double sum = 0.0;
  if (s == 0.0) {
    for (const cplx& v : F.values()) sum += std::norm(v);
  } else {
    const GridSpec& grid = F.grid();
    for (std::size_t k = 0; k < F.values().size(); ++k) {
      sum += std::pow(grid.bracket_squared(k), s) * std::norm(F.values()[k]);
    }
  }
  return std::sqrt(F.grid().freq_cell() * sum);
}

double sobolev_norm(const SampledField& f, double s) {
  return sobolev_norm(forward_transform(f), s);
}

double bessel_norm(const SampledField& f, double t, double p) {
  if (!(p >= 1.0 && p <= 2.0)) {
    throw ParameterError("bessel_norm: p must lie in [1, 2]");
  }
  if (t == 0.0) return lp_norm(f, Exponent(p));
  SpectralField F = forward_transform(f);
  const GridSpec& grid = F.grid();
  for (std::size_t k = 0; k < F.values().size(); ++k) {
    F.values()[k] *= std::pow(grid.bracket_squared(k), 0.5 * t);
  }
  F.set_declared_mask(std::nullopt);
  return lp_norm(inverse_transform(F), Exponent(p));
}

double weight_norm(const SupportMask& a, double alpha, const Exponent& q) {
  const GridSpec& grid = a.grid();
  if (q.is_infinite()) {
    double best = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      if (!a.test(k)) continue;
      best = std::max(best, std::pow(grid.bracket_squared(k), 0.5 * alpha));
    }
    return best;
  }
  const double qv = q.value();
  double sum = 0.0;
  bool any = false;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!a.test(k)) continue;
    any = true;
    sum += std::pow(grid.bracket_squared(k), 0.5 * alpha * qv);
  }
  if (!any) return 0.0;
  return std::pow(grid.freq_cell() * sum, 1.0 / qv);
}

HausdorffYoungSides hausdorff_young_check(const SampledField& f, double p) {
  if (!(p >= 1.0 && p <= 2.0)) {
    throw ParameterError("hausdorff_young_check: p must lie in [1, 2]");
  }
  const SpectralField F = forward_transform(f);
  const double lhs = lp_norm(F, Exponent(p).conjugate());
  const double rhs = std::sqrt(beckner_constant(f.grid().dim(), p)) * lp_norm(f, Exponent(p));
  return {lhs, rhs};
}

}  // namespace phasebound
