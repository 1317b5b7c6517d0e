#include "phasebound/conditional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "phasebound/errors.hpp"
#include "phasebound/norms.hpp"

namespace phasebound {

namespace {

constexpr double kMembershipSlack = 1e-12;

struct PairData {
  SpectralField F;
  SpectralField G;
  SupportMask f_mask;
  SupportMask g_mask;
  bool declared;
};

PairData analyze(const SampledField& f, const SampledField& g,
                 const ConditionalOptions& options, const char* what) {
  if (f.grid() != g.grid()) throw StructuralError(std::string(what) + ": grid mismatch");
  SpectralField F = forward_transform(f);
  SpectralField G = forward_transform(g);
  if (!(f.declared_mask() && g.declared_mask()) && !options.allow_detected) {
    throw DomainError(std::string(what) +
                      ": declared spectral masks required; detected masks must be "
                      "enabled explicitly (allow_detected)");
  }
  PairMasks masks = resolve_pair_masks(f, g, F, G, options.detect_tau);
  return {std::move(F), std::move(G), std::move(masks.f_mask), std::move(masks.g_mask),
          masks.declared};
}

// H^s-weighted energies of the Pythagorean splitting of f - g over the
// partition common / f-only / g-only.
struct SplitEnergies {
  double total;   ///< ||f-g||^2
  double common;  ///< ||M_{f^g}(f-g)||^2
  double f_only;  ///< ||M_{f\g}f||^2
  double g_only;  ///< ||M_{g\f}g||^2
  double magnitude;  ///< ||<xi>^s(|fhat|-|ghat|)||_2^2
};

SplitEnergies split_energies(const PairData& pair, double s) {
  const GridSpec& grid = pair.F.grid();
  const double cell = grid.freq_cell();
  SplitEnergies out{0.0, 0.0, 0.0, 0.0, 0.0};
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double w = cell * (s == 0.0 ? 1.0 : std::pow(grid.bracket_squared(k), s));
    const cplx fv = pair.F.values()[k];
    const cplx gv = pair.G.values()[k];
    const double diff = std::norm(fv - gv);
    const double mag = std::abs(fv) - std::abs(gv);
    out.total += w * diff;
    out.magnitude += w * mag * mag;
    const bool in_f = pair.f_mask.test(k);
    const bool in_g = pair.g_mask.test(k);
    if (in_f && in_g) {
      out.common += w * diff;
    } else if (in_f) {
      out.f_only += w * std::norm(fv);
    } else if (in_g) {
      out.g_only += w * std::norm(gv);
    }
  }
  return out;
}

void require_distinct(const SplitEnergies& e, const char* what) {
  if (e.total <= 0.0) {
    throw DomainError(std::string(what) + ": undefined for f = g");
  }
}

void require_differing_supports(const PairData& pair, const char* what) {
  if (pair.f_mask == pair.g_mask) {
    throw DomainError(std::string(what) +
                      ": supports coincide, the hypothesis supp(fhat) != supp(ghat) "
                      "fails (the estimate would hold only with r = 1)");
  }
}

}  // namespace

double disjointness_ratio(const SampledField& f, const SampledField& g, double s,
                          const ConditionalOptions& options) {
  const PairData pair = analyze(f, g, options, "disjointness_ratio");
  const SplitEnergies e = split_energies(pair, s);
  require_distinct(e, "disjointness_ratio");
  return std::min(1.0, std::sqrt(e.common / e.total));
}

double r_zero(const SampledField& f, const SampledField& g, double s,
              const ConditionalOptions& options) {
  const PairData pair = analyze(f, g, options, "r_zero");
  require_differing_supports(pair, "r_zero");
  const SplitEnergies e = split_energies(pair, s);
  require_distinct(e, "r_zero");
  const double ratio = (e.f_only + e.g_only) / e.total;
  return std::sqrt(std::max(0.0, 1.0 - ratio));
}

ConditionalReport conditional_bound(const SampledField& f, const SampledField& g, double s,
                                    double r, const ConditionalOptions& options) {
  if (!(r >= 0.0 && r < 1.0)) {
    throw ParameterError("conditional_bound: r must lie in [0, 1)");
  }
  const PairData pair = analyze(f, g, options, "conditional_bound");
  const SplitEnergies e = split_energies(pair, s);
  require_distinct(e, "conditional_bound");

  const double measured = std::min(1.0, std::sqrt(e.common / e.total));
  const bool member = measured <= r + kMembershipSlack;
  if (!member) {
    throw DomainError("conditional_bound: (f,g) is not in X^s(r), measured ratio " +
                      std::to_string(measured) + " exceeds r = " + std::to_string(r));
  }

  ConditionalReport report;
  report.s = s;
  report.r = r;
  report.r0 = pair.f_mask == pair.g_mask
                  ? 1.0
                  : std::sqrt(std::max(0.0, 1.0 - (e.f_only + e.g_only) / e.total));
  report.constant = 1.0 / (1.0 - r * r);
  report.lhs = e.total;
  report.rhs = report.constant * e.magnitude;
  report.margin = report.rhs - report.lhs;
  report.member_x_fr = member;
  report.member_x_r = member;
  report.trivial_ratio = std::numeric_limits<double>::quiet_NaN();
  report.masks_declared = pair.declared;
  return report;
}

ConditionalReport quotient_conditional_bound(const SampledField& f, const SampledField& g,
                                             double s, const GroupSpec& group,
                                             const ConditionalOptions& options) {
  const PairData pair = analyze(f, g, options, "quotient_conditional_bound");
  require_differing_supports(pair, "quotient_conditional_bound");
  const SplitEnergies e = split_energies(pair, s);
  require_distinct(e, "quotient_conditional_bound");
  const double difference_energy = e.f_only + e.g_only;
  if (difference_energy <= 0.0) {
    throw DomainError(
        "quotient_conditional_bound: spectra vanish on the support difference sets");
  }

  const QuotientResult q = quotient_distance(f, g, s, group);
  const double d2 = q.distance * q.distance;

  ConditionalReport report;
  report.s = s;
  report.r = std::min(1.0, std::sqrt(e.common / e.total));
  report.r0 = std::sqrt(std::max(0.0, 1.0 - difference_energy / e.total));
  report.constant = d2 / difference_energy;
  report.lhs = d2;
  report.rhs = report.constant * e.magnitude;
  report.margin = report.rhs - report.lhs;
  report.member_x_fr = report.r <= report.r0 + kMembershipSlack;
  report.member_x_r = report.member_x_fr;
  report.trivial_ratio = e.magnitude / difference_energy;
  report.masks_declared = pair.declared;
  return report;
}

}  // namespace phasebound
