#pragma once

#include <string>
#include <vector>

#include "phasebound/gen.hpp"
#include "phasebound/runconfig.hpp"

namespace phasebound {

struct VerifyOutcome {
  int trials = 0;
  int checks = 0;
  int violations = 0;
  std::string jsonl_path;
  std::string csv_path;
};

/// Runs the suite named by cfg.target over a worker pool and writes the
/// JSON-lines stream and CSV summary. Trial results are merged in trial
/// order, so the output bytes do not depend on the worker count.
VerifyOutcome run_verify(const RunConfig& cfg);

/// Applies the main estimate (and optionally the conditional estimates) to
/// a pair of field files and writes a certificate; returns the number of
/// violation findings.
int run_certify(const RunConfig& cfg);

/// One- or two-axis sweep over {overlap_fraction, s, t, p, L}; writes a
/// plot-ready table.
void run_scan(const RunConfig& cfg);

/// Generates fields into FLD-JSON files.
void run_gen(const RunConfig& cfg);

/// Deterministic suite field builders, shared between the verify targets
/// and the acceptance harness.
namespace suites {

/// Geometry used by the band-limited (identity-exact) suites.
GridSpec band_grid(int dim, int samples = 0, double spacing = 0.0);
/// Geometry used by the gaussian-mixture (decay-disciplined) suites.
GridSpec mixture_grid(int dim, int samples = 0, double spacing = 0.0);

/// Random sum of 1..3 modulated gaussians with parameters drawn inside
/// the decay discipline of the grid.
SampledField gaussian_mixture(const GridSpec& grid, const CounterRng& stream);

/// Draws a random element of the enabled family.
AmbiguityElement random_element(const GridSpec& grid, const GroupSpec& group,
                                const CounterRng& stream);

}  // namespace suites

}  // namespace phasebound
