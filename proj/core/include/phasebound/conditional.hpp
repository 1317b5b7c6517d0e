#pragma once

#include "phasebound/ambiguity.hpp"
#include "phasebound/field.hpp"
#include "phasebound/support.hpp"

namespace phasebound {

/// Options for the conditional estimates. These quantities are exact
/// set-splitting identities, so they insist on declared masks; detected
/// masks must be enabled explicitly and make the identities approximate.
struct ConditionalOptions {
  bool allow_detected = false;
  double detect_tau = kDefaultDetectTau;
};

/// One instance of a conditional estimate
///   lhs <= C * ||<xi>^s(|fhat|-|ghat|)||_2^2.
struct ConditionalReport {
  double s;
  double r;              ///< disjointness ratio used for the bound
  double r0;             ///< membership threshold of Lemma-A.2 type
  double constant;       ///< C = 1/(1-r^2), or the quotient-form constant
  double lhs;
  double rhs;
  double margin;         ///< rhs - lhs
  bool member_x_fr;      ///< g in X^s(f;r)
  bool member_x_r;       ///< (f,g) in X^s(r); same test on a fixed pair
  double trivial_ratio;  ///< quotient form only: magnitude^2 / difference-set energy
  bool masks_declared;
};

/// r(f,g) = ||M_{f^g}(f-g)||_{H^s} / ||f-g||_{H^s} in [0,1]; requires f != g.
double disjointness_ratio(const SampledField& f, const SampledField& g, double s,
                          const ConditionalOptions& options = {});

/// The exact membership threshold
///   r0 = sqrt(1 - (||M_{f\g}f||^2 + ||M_{g\f}g||^2) / ||f-g||^2),
/// defined when the declared supports differ; equals the measured
/// disjointness ratio by the Pythagorean splitting.
double r_zero(const SampledField& f, const SampledField& g, double s,
              const ConditionalOptions& options = {});

/// ||f-g||^2_{H^s} <= C ||<xi>^s(|fhat|-|ghat|)||_2^2 with C = 1/(1-r^2),
/// valid when (f,g) lies in X^s(r); membership is checked.
ConditionalReport conditional_bound(const SampledField& f, const SampledField& g, double s,
                                    double r, const ConditionalOptions& options = {});

/// The quotient form with C = d([f],[g])^2 / (||M_{f\g}f||^2 + ||M_{g\f}g||^2);
/// also reports the trivial ratio magnitude^2 / difference-set energy, which
/// is >= 1 exactly whenever the supports differ.
ConditionalReport quotient_conditional_bound(const SampledField& f, const SampledField& g,
                                             double s, const GroupSpec& group,
                                             const ConditionalOptions& options = {});

}  // namespace phasebound
