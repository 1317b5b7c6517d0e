#pragma once

#include <span>

#include "phasebound/exponent.hpp"
#include "phasebound/field.hpp"
#include "phasebound/support.hpp"

namespace phasebound {

/// The (s, t, p) parameter triple of the mixed estimates, with the derived
/// exponents kept branch-exact:
///   p' = p/(p-1)          (inf at p = 1)
///   q  = p'/2             (the Hoelder split of the coefficient step)
///   q' = p/(2-p)          (inf at p = 2, the coefficient exponent)
///   a  = n(1/p - 1/2)     (the embedding threshold)
struct StabilityParams {
  double s;
  double t;
  double p;
  int dim;

  StabilityParams(double s, double t, double p, int dim);

  Exponent p_conjugate() const;
  Exponent holder_q() const;
  Exponent coefficient_exponent() const;
  double delta() const { return 2.0 * t; }
  double threshold_a() const { return dim * (1.0 / p - 0.5); }
};

/// <xi> = sqrt(1 + |xi|^2).
double bracket(std::span<const double> xi);

/// (h^n sum_j |f_j|^p)^{1/p}; max_j |f_j| at p = inf.
double lp_norm(const SampledField& f, const Exponent& p);
double lp_norm(const SampledField& f, double p);

/// Spectral-side quadrature with frequency cell weights.
double lp_norm(const SpectralField& F, const Exponent& p);
double lp_norm(const SpectralField& F, double p);

/// (prod dxi * sum_k <xi_k>^{2s} |F_k|^2)^{1/2}.
double sobolev_norm(const SpectralField& F, double s);
/// Convenience: sobolev_norm(forward_transform(f), s).
double sobolev_norm(const SampledField& f, double s);

/// L^p norm of F^{-1}(<xi>^t * fhat); t = 0 short-circuits to lp_norm so
/// the identity multiplier is exact. Requires p in [1, 2].
double bessel_norm(const SampledField& f, double t, double p);

/// (prod dxi * sum_{k in A} <xi_k>^{alpha q})^{1/q}; sup over A of
/// <xi_k>^alpha at q = inf; 0 for the empty mask.
double weight_norm(const SupportMask& a, double alpha, const Exponent& q);

/// Both sides of the sharp Hausdorff-Young inequality at p in [1, 2]:
/// lhs = spectral L^{p'} norm of fhat, rhs = sqrt(c_{n,p}) * ||f||_p.
struct HausdorffYoungSides {
  double lhs;
  double rhs;
};
HausdorffYoungSides hausdorff_young_check(const SampledField& f, double p);

}  // namespace phasebound
