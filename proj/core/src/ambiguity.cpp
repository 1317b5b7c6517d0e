#include "phasebound/ambiguity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "fft_engine.hpp"
#include "phasebound/errors.hpp"
#include "phasebound/norms.hpp"

namespace phasebound {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double theta) {
  theta = std::fmod(theta, kTwoPi);
  if (theta < 0.0) theta += kTwoPi;
  return theta;
}

std::vector<int> canonical_shift(const GridSpec& grid, std::span<const int> cells) {
  std::vector<int> out(grid.dim());
  for (int ax = 0; ax < grid.dim(); ++ax) {
    const int N = grid.dims()[ax];
    out[ax] = ((cells[ax] % N) + N) % N;
  }
  return out;
}

// H^s weights prod(dxi) * <xi_k>^{2s} per bin.
std::vector<double> sobolev_weights(const GridSpec& grid, double s) {
  std::vector<double> w = bracket_squared_table(grid);
  const double cell = grid.freq_cell();
  for (double& v : w) v = cell * std::pow(v, s);
  return w;
}

double weighted_norm_sq(const std::vector<double>& w, const std::vector<cplx>& v) {
  double sum = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) sum += w[k] * std::norm(v[k]);
  return sum;
}

// Residual norm ||f - P g||_{H^s} evaluated directly; free of the
// cancellation the closed-form d^2 = nf+ng-2|S| suffers near exact matches.
double residual_distance(const SampledField& f, const SampledField& g,
                         const AmbiguityElement& e, double s) {
  const SampledField pg = apply_element(e, g);
  return sobolev_norm(subtract(f, pg), s);
}

int coordinate_parity(const GridSpec& grid, std::size_t index) {
  int parity = 0;
  for (int ax = grid.dim() - 1; ax >= 0; --ax) {
    const int N = grid.dims()[ax];
    parity += static_cast<int>(index % static_cast<std::size_t>(N));
    index /= static_cast<std::size_t>(N);
  }
  return parity & 1;
}

}  // namespace

AmbiguityElement AmbiguityElement::identity(int dim) {
  AmbiguityElement e;
  e.shift.assign(dim, 0);
  e.tau_frac.assign(dim, 0.0);
  return e;
}

bool AmbiguityElement::is_identity() const {
  if (theta != 0.0 || reflect) return false;
  for (int m : shift)
    if (m != 0) return false;
  return !has_fractional_shift();
}

bool AmbiguityElement::has_fractional_shift() const {
  for (double t : tau_frac)
    if (t != 0.0) return true;
  return false;
}

GroupSpec GroupSpec::parse(const std::string& name) {
  if (name == "id") return identity_only();
  if (name == "phase") return phase_only();
  if (name == "phase+shift") return phase_shift();
  if (name == "phase+shift+reflect") return phase_shift_reflect();
  throw ParameterError("GroupSpec: unknown group '" + name +
                       "' (expected id, phase, phase+shift, phase+shift+reflect)");
}

std::string GroupSpec::name() const {
  if (is_identity_only()) return "id";
  std::string out;
  if (global_phase) out = "phase";
  if (translations) out += out.empty() ? "shift" : "+shift";
  if (conjugate_reflection) out += out.empty() ? "reflect" : "+reflect";
  return out;
}

bool GroupSpec::subset_of(const GroupSpec& other) const {
  return (!global_phase || other.global_phase) && (!translations || other.translations) &&
         (!conjugate_reflection || other.conjugate_reflection);
}

SampledField apply_element(const AmbiguityElement& e, const SampledField& f) {
  const GridSpec& grid = f.grid();
  const int n = grid.dim();
  if (static_cast<int>(e.shift.size()) != n && !e.shift.empty()) {
    throw StructuralError("apply_element: shift size != grid dimension");
  }
  if (static_cast<int>(e.tau_frac.size()) != n && !e.tau_frac.empty()) {
    throw StructuralError("apply_element: tau_frac size != grid dimension");
  }

  if (!e.has_fractional_shift()) {
    SampledField out = e.reflect ? conjugate_reflect(f) : f;
    bool any_shift = false;
    for (int m : e.shift) any_shift |= (m != 0);
    if (any_shift) out = circular_shift(out, e.shift);
    if (e.theta != 0.0) out = scale(out, std::polar(1.0, e.theta));
    return out;
  }

  // Fractional shifts act spectrally: unimodular per-bin factors keep the
  // magnitude data and the declared support intact.
  SpectralField F = forward_transform(f);
  std::vector<cplx> out(grid.size());
  std::vector<int> c(n, 0);
  const cplx phase = std::polar(1.0, e.theta);
  for (std::size_t k = 0; k < out.size(); ++k) {
    double arg = 0.0;
    for (int ax = 0; ax < n; ++ax) {
      const double total_shift =
          (e.shift.empty() ? 0.0 : e.shift[ax] * grid.spacing()) +
          (e.tau_frac.empty() ? 0.0 : e.tau_frac[ax]);
      arg -= total_shift * grid.freq_node(ax, c[ax]);
    }
    const cplx base = e.reflect ? std::conj(F.values()[k]) : F.values()[k];
    out[k] = phase * std::polar(1.0, arg) * base;
    for (int ax = n - 1; ax >= 0; --ax) {
      if (++c[ax] < grid.dims()[ax]) break;
      c[ax] = 0;
    }
  }
  SpectralField G(grid, std::move(out));
  G.set_declared_mask(f.declared_mask());
  return inverse_transform(G);
}

PhaseOptimum optimal_phase(const SampledField& f, const SampledField& g, double s) {
  if (f.grid() != g.grid()) throw StructuralError("optimal_phase: grid mismatch");
  const SpectralField F = forward_transform(f);
  const SpectralField G = forward_transform(g);
  const std::vector<double> w = sobolev_weights(f.grid(), s);
  cplx inner(0.0, 0.0);
  for (std::size_t k = 0; k < w.size(); ++k) {
    inner += w[k] * F.values()[k] * std::conj(G.values()[k]);
  }
  const double theta = std::abs(inner) > 0.0 ? wrap_angle(std::arg(inner)) : 0.0;
  AmbiguityElement e = AmbiguityElement::identity(f.grid().dim());
  e.theta = theta;
  return {theta, residual_distance(f, g, e, s)};
}

QuotientResult quotient_distance(const SampledField& f, const SampledField& g, double s,
                                 const GroupSpec& group, const QuotientOptions& options) {
  if (f.grid() != g.grid()) throw StructuralError("quotient_distance: grid mismatch");
  const GridSpec& grid = f.grid();
  const int n = grid.dim();

  const SpectralField F = forward_transform(f);
  const SpectralField G = forward_transform(g);
  const std::vector<double> w = sobolev_weights(grid, s);
  const double nf2 = weighted_norm_sq(w, F.values());
  const double ng2 = weighted_norm_sq(w, G.values());

  double best_objective = 0.0;
  bool have_best = false;
  bool best_reflect = false;
  std::vector<int> best_shift(n, 0);
  cplx best_corr(0.0, 0.0);

  const std::vector<bool> reflect_choices =
      group.conjugate_reflection ? std::vector<bool>{false, true} : std::vector<bool>{false};

  for (bool reflect : reflect_choices) {
    // w_k = weight * fhat * conj of the reflected/plain ghat. The shift
    // objective is nf2 + ng2 - 2*Re(e^{-i theta} S_m) with
    // S_m = sum_k w_k e^{i m h . xi_k}, all m at once via one inverse FFT.
    std::vector<cplx> corr(grid.size());
    for (std::size_t k = 0; k < corr.size(); ++k) {
      const cplx gb = reflect ? std::conj(G.values()[k]) : G.values()[k];
      corr[k] = w[k] * F.values()[k] * std::conj(gb);
    }

    if (group.translations) {
      detail::dft_inplace(corr, grid.dims(), +1);
      std::vector<int> m(n, 0);
      for (std::size_t idx = 0; idx < corr.size(); ++idx) {
        const cplx S = coordinate_parity(grid, idx) ? -corr[idx] : corr[idx];
        const double gain = group.global_phase ? std::abs(S) : S.real();
        const double objective = nf2 + ng2 - 2.0 * gain;
        if (!have_best || objective < best_objective) {
          have_best = true;
          best_objective = objective;
          best_reflect = reflect;
          grid.unflatten(idx, m);
          best_shift.assign(m.begin(), m.end());
          best_corr = S;
        }
      }
    } else {
      cplx S(0.0, 0.0);
      for (const cplx& v : corr) S += v;
      const double gain = group.global_phase ? std::abs(S) : S.real();
      const double objective = nf2 + ng2 - 2.0 * gain;
      if (!have_best || objective < best_objective) {
        have_best = true;
        best_objective = objective;
        best_reflect = reflect;
        best_shift.assign(n, 0);
        best_corr = S;
      }
    }
  }

  AmbiguityElement argmin = AmbiguityElement::identity(n);
  argmin.reflect = best_reflect;
  argmin.shift = canonical_shift(grid, best_shift);
  argmin.theta =
      (group.global_phase && std::abs(best_corr) > 0.0) ? wrap_angle(std::arg(best_corr)) : 0.0;

  if (options.subgrid_refine && group.translations) {
    // Per-axis parabola through the objective at m*-1, m*, m*+1; accept the
    // vertex offset only when the directly evaluated objective improves.
    const auto objective_at = [&](const std::vector<double>& tau) {
      cplx S(0.0, 0.0);
      std::vector<int> c(n, 0);
      for (std::size_t k = 0; k < grid.size(); ++k) {
        double arg = 0.0;
        for (int ax = 0; ax < n; ++ax) {
          arg += (argmin.shift[ax] * grid.spacing() + tau[ax]) * grid.freq_node(ax, c[ax]);
        }
        const cplx gb = best_reflect ? std::conj(G.values()[k]) : G.values()[k];
        S += w[k] * F.values()[k] * std::conj(gb) * std::polar(1.0, arg);
        for (int ax = n - 1; ax >= 0; --ax) {
          if (++c[ax] < grid.dims()[ax]) break;
          c[ax] = 0;
        }
      }
      const double gain = group.global_phase ? std::abs(S) : S.real();
      return std::make_pair(nf2 + ng2 - 2.0 * gain, S);
    };

    std::vector<double> tau(n, 0.0);
    for (int ax = 0; ax < n; ++ax) {
      std::vector<double> probe = tau;
      probe[ax] = -grid.spacing();
      const double lo = objective_at(probe).first;
      probe[ax] = grid.spacing();
      const double hi = objective_at(probe).first;
      const double denom = lo - 2.0 * best_objective + hi;
      if (denom <= 0.0) continue;
      const double offset = 0.5 * (lo - hi) / denom * grid.spacing();
      probe[ax] = offset;
      auto [candidate, S] = objective_at(probe);
      if (candidate < best_objective) {
        best_objective = candidate;
        tau[ax] = offset;
        best_corr = S;
      }
    }
    bool any = false;
    for (double t : tau) any |= (t != 0.0);
    if (any) {
      argmin.tau_frac = tau;
      argmin.theta = (group.global_phase && std::abs(best_corr) > 0.0)
                         ? wrap_angle(std::arg(best_corr))
                         : 0.0;
    }
  }

  return {residual_distance(f, g, argmin, s), argmin};
}

UnimodularResult unimodular_optimal_multiplier(const SampledField& f, const SampledField& g) {
  if (f.grid() != g.grid()) throw StructuralError("unimodular_optimal_multiplier: grid mismatch");
  const GridSpec& grid = f.grid();
  const SpectralField F = forward_transform(f);
  const SpectralField G = forward_transform(g);
  const PairMasks masks = resolve_pair_masks(f, g, F, G);
  const SupportMask common = intersect(masks.f_mask, masks.g_mask);

  std::vector<cplx> a(grid.size(), cplx(1.0, 0.0));
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!common.test(k)) continue;
    const double fa = std::abs(F.values()[k]);
    const double ga = std::abs(G.values()[k]);
    if (fa == 0.0 || ga == 0.0) continue;  // a zero bin behaves like the off set
    a[k] = (F.values()[k] / fa) * (std::conj(G.values()[k]) / ga);
  }

  std::vector<cplx> masked(grid.size());
  for (std::size_t k = 0; k < masked.size(); ++k) masked[k] = a[k] * G.values()[k];
  SpectralField MaG(grid, std::move(masked));
  MaG.set_declared_mask(G.declared_mask());
  const double distance = lp_norm(subtract(f, inverse_transform(MaG)), 2.0);
  return {SpectralField(grid, std::move(a)), distance};
}

}  // namespace phasebound
