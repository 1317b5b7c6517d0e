#pragma once

#include "phasebound/ambiguity.hpp"
#include "phasebound/field.hpp"
#include "phasebound/norms.hpp"

namespace phasebound {

/// Whether the stability coefficient uses the sharp squared transform norm
/// c_{n,p} or the admissible simplification c = 1.
enum class ConstantMode { beckner, one };

/// Squared L^p -> L^{p'} operator norm of the (2pi)^{-n/2} e^{-ix.xi}
/// transform, p in [1, 2]:
///   c_{n,p} = [(2pi)^{2/p' - 1} * p^{1/p} / p'^{1/p'}]^n,
/// with the exact branches c_{n,1} = (2pi)^{-n} and c_{n,2} = 1.
double beckner_constant(int n, double p);

double stability_constant(int n, double p, ConstantMode mode);

/// Grid-level metadata about an intersection support used by the
/// finiteness conditions. On a finite grid every mask is bounded with
/// finite measure, so conditions that quantify over the continuum carry a
/// grid_vacuous caveat.
struct MaskMeta {
  double measure = 0.0;
  bool declared = false;
};

struct FinitenessFlags {
  bool compact_support = false;   ///< (i): bounded support; vacuous on a grid
  bool grid_vacuous = false;      ///< caveat attached to (i)
  bool finite_measure = false;    ///< (ii): finite measure and s <= t
  bool sobolev_regime = false;    ///< (iii): s < t - a, strictly
  bool any() const { return compact_support || finite_measure || sobolev_regime; }
  /// The conditions that still say something once the grid truncation is
  /// taken out of the picture.
  bool continuum_meaningful() const { return finite_measure || sobolev_regime; }
};
FinitenessFlags finiteness_conditions(const StabilityParams& params, const MaskMeta& meta);

/// The three terms of the basic gap estimate
///   ||f-g||_{H^s}^2 <= ||<xi>^s(|fhat|-|ghat|)||_2^2 + ||M_{f^g}(f-g)||_{H^s}^2.
/// With declared masks the inequality is exact off the common support.
struct LemmaGap {
  double lhs;
  double magnitude_term;
  double multiplier_term;
  bool masks_declared;
};
LemmaGap lemma_gap(const SampledField& f, const SampledField& g, double s,
                   double detect_tau = kDefaultDetectTau);

/// Everything that enters one instance of the main estimate
///   d([f],[g])^2 <= magnitude_term + coefficient * apriori_term.
struct StabilityReport {
  StabilityParams params;
  GroupSpec group;
  double lhs;               ///< d([f],[g])^2
  double magnitude_term;    ///< ||<xi>^s(|fhat|-|ghat|)||_2^2
  double coefficient;       ///< c * ||chi_A <xi>^{2s-2t}||_{p/(2-p)}
  double apriori_term;      ///< best available ||Pf-Qg||^2_{H^{t,p}}
  double rhs;
  double margin;            ///< rhs - lhs; negative margins are findings
  FinitenessFlags conditions;
  AmbiguityElement lhs_witness;
  AmbiguityElement apriori_witness;  ///< element applied to g, paired with P = id
  bool masks_declared;
  double intersection_measure;
};

struct StabilityOptions {
  ConstantMode constant_mode = ConstantMode::beckner;
  bool subgrid_refine = false;
  double detect_tau = kDefaultDetectTau;
};

/// Assembles the main estimate. The a priori infimum over (P, Q) is
/// evaluated at identity, at the H^s-optimal witness, and at a phase
/// refinement of each candidate shift; any admissible element upper-bounds
/// the infimum, so the reported rhs stays valid.
StabilityReport stability_bound(const SampledField& f, const SampledField& g,
                                const StabilityParams& params, const GroupSpec& group,
                                const StabilityOptions& options = {});

struct EstimateSides {
  double lhs;
  double rhs;
};

/// ||f||_2^2 <= (2pi)^{-n} L ||f||_1^2 with L the declared support measure.
EstimateSides basic_support_estimate(const SampledField& f);

/// Both sides of the comparison estimate
///   ||f-g||_2 <= 2|| |fhat|-|ghat| ||_2 + 30 sqrt(L) ||f-g||_1 + 2||Im ghat||_2,
/// which requires fhat real-valued and a declared finite support for f.
struct SteinerbergerSides {
  double lhs;
  double rhs;
  double magnitude_term;
  double l1_term;
  double imaginary_term;
  double support_measure;
};
SteinerbergerSides steinerberger_bound(const SampledField& f, const SampledField& g);

/// Fractional embedding ||f||_{H^s} <= C ||f||_{H^{t,p}} for s < t - a,
/// assembled as the full-grid specialization of the main estimate with
/// g = 0 and the magnitude term dropped.
EstimateSides sobolev_embedding_check(const SampledField& f, const StabilityParams& params,
                                      ConstantMode mode = ConstantMode::beckner);

}  // namespace phasebound
