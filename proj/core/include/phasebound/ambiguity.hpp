#pragma once

#include <string>
#include <vector>

#include "phasebound/field.hpp"

namespace phasebound {

/// One element of the parametric trivial-ambiguity family. The action on a
/// field, written spectrally, is
///
///   ghat_k = e^{i theta} * e^{-i (m h + tau).xi_k} * (conj if reflect)(fhat_k)
///
/// i.e. conjugate reflection first, then translation by m*h + tau, then the
/// global phase. Every element preserves |fhat| pointwise and is an H^s
/// isometry for every s.
struct AmbiguityElement {
  double theta = 0.0;             ///< global phase in [0, 2*pi)
  std::vector<int> shift;          ///< per-axis whole cells, canonical in [0, N_i)
  std::vector<double> tau_frac;    ///< per-axis sub-cell offset
  bool reflect = false;            ///< conjugate reflection applied first

  static AmbiguityElement identity(int dim);
  bool is_identity() const;
  bool has_fractional_shift() const;
};

/// Which generator families a subgroup enables. The parametric family
/// phase x translation x reflection is closed under composition for any
/// combination of enabled generators.
struct GroupSpec {
  bool global_phase = false;
  bool translations = false;
  bool conjugate_reflection = false;

  static GroupSpec identity_only() { return {}; }
  static GroupSpec phase_only() { return {true, false, false}; }
  static GroupSpec phase_shift() { return {true, true, false}; }
  static GroupSpec phase_shift_reflect() { return {true, true, true}; }

  /// Accepts "id", "phase", "phase+shift", "phase+shift+reflect".
  static GroupSpec parse(const std::string& name);
  std::string name() const;

  bool is_identity_only() const {
    return !global_phase && !translations && !conjugate_reflection;
  }
  /// True when other enables a superset of this group's generators.
  bool subset_of(const GroupSpec& other) const;
};

/// Applies an element. Whole-cell shifts, reflection and the phase act by
/// exact index permutation and scalar multiplication; a fractional shift
/// routes through the spectral side. Declared masks are preserved.
SampledField apply_element(const AmbiguityElement& e, const SampledField& f);

/// Closed-form optimum of theta -> ||f - e^{i theta} g||_{H^s}:
/// theta* = arg <f, g>_s with <f,g>_s = prod(dxi) sum <xi>^{2s} fhat conj(ghat),
/// d^2 = ||f||^2 + ||g||^2 - 2|<f,g>_s|. The returned distance is recomputed
/// as the norm of the actual residual, so exact matches come out at
/// rounding level rather than at sqrt(cancellation) level.
struct PhaseOptimum {
  double theta;
  double distance;
};
PhaseOptimum optimal_phase(const SampledField& f, const SampledField& g, double s);

struct QuotientOptions {
  /// After the best whole-cell shift, fit a parabola through the objective
  /// at the neighboring shifts per axis and keep the sub-cell vertex if it
  /// improves the objective.
  bool subgrid_refine = false;
};

/// d([f],[g]) = inf over the enabled family of ||f - P g||_{H^s}, with the
/// argmin element. All whole-cell shift objectives are evaluated at once
/// through a single weighted cross-correlation FFT; the phase is optimal in
/// closed form per candidate. Ties resolve to the smallest reflect flag,
/// then the lexicographically smallest shift.
struct QuotientResult {
  double distance;
  AmbiguityElement argmin;
};
QuotientResult quotient_distance(const SampledField& f, const SampledField& g, double s,
                                 const GroupSpec& group, const QuotientOptions& options = {});

/// The optimal unimodular spectral multiplier a with
/// a = fhat/|fhat| * conj(ghat)/|ghat| off A = {fhat = 0 or ghat = 0}, 1 on A,
/// together with d = ||f - M_a g||_2, which equals || |fhat| - |ghat| ||_2
/// exactly at the discrete level.
struct UnimodularResult {
  SpectralField multiplier;
  double distance;
};
UnimodularResult unimodular_optimal_multiplier(const SampledField& f, const SampledField& g);

}  // namespace phasebound
