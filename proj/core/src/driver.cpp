#include "phasebound/driver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "json_codec.hpp"
#include "phasebound/conditional.hpp"
#include "phasebound/errors.hpp"
#include "phasebound/field_io.hpp"
#include "phasebound/report_io.hpp"

namespace phasebound {

namespace suites {

GridSpec band_grid(int dim, int samples, double spacing) {
  if (dim == 2) {
    return GridSpec::square(samples > 0 ? samples : 48, spacing > 0 ? spacing : 0.25);
  }
  return GridSpec::line(samples > 0 ? samples : 256, spacing > 0 ? spacing : 0.1);
}

GridSpec mixture_grid(int dim, int samples, double spacing) {
  if (dim == 2) {
    return GridSpec::square(samples > 0 ? samples : 128, spacing > 0 ? spacing : 0.25);
  }
  return GridSpec::line(samples > 0 ? samples : 512, spacing > 0 ? spacing : 0.08);
}

namespace {

// Parameter ranges keeping every term's spatial tail below 1e-12 of its
// peak at the box boundary and its spectral tail below rounding at the
// Nyquist frequency.
struct MixtureLimits {
  double width_lo;
  double width_hi;
  double center_max;
  double modulation_max;
};

MixtureLimits mixture_limits(const GridSpec& grid) {
  double extent_min = grid.extent(0);
  for (int ax = 1; ax < grid.dim(); ++ax) extent_min = std::min(extent_min, grid.extent(ax));
  MixtureLimits lim;
  lim.width_lo = std::max(4.0 * grid.spacing(), extent_min / 40.0);
  lim.width_hi = std::max(lim.width_lo, extent_min / 20.0);
  lim.center_max =
      std::max(0.0, std::min(extent_min / 10.0, extent_min / 2.0 - 7.9 * lim.width_hi));
  const double nyquist = std::numbers::pi / grid.spacing();
  lim.modulation_max = std::max(0.0, std::min(6.0, nyquist - 8.5 / lim.width_lo));
  return lim;
}

}  // namespace

SampledField gaussian_mixture(const GridSpec& grid, const CounterRng& stream) {
  const MixtureLimits lim = mixture_limits(grid);
  const int n = grid.dim();
  const int terms = 1 + static_cast<int>(stream.raw(0) % 3);
  SampledField sum(grid, std::vector<cplx>(grid.size(), cplx(0.0, 0.0)));
  for (int j = 0; j < terms; ++j) {
    GaussianSpec spec{grid};
    spec.amplitude = stream.complex_normal(16 + j);
    spec.width = stream.uniform(48 + j, lim.width_lo, lim.width_hi);
    spec.center.resize(n);
    spec.modulation.resize(n);
    for (int ax = 0; ax < n; ++ax) {
      spec.center[ax] = stream.uniform(96 + 8 * j + ax, -lim.center_max, lim.center_max);
      spec.modulation[ax] =
          stream.uniform(160 + 8 * j + ax, -lim.modulation_max, lim.modulation_max);
    }
    sum = add(sum, gaussian_field(spec));
  }
  sum.set_declared_mask(std::nullopt);
  return sum;
}

AmbiguityElement random_element(const GridSpec& grid, const GroupSpec& group,
                                const CounterRng& stream) {
  AmbiguityElement e = AmbiguityElement::identity(grid.dim());
  if (group.global_phase) e.theta = stream.uniform(0) * 2.0 * std::numbers::pi;
  if (group.translations) {
    for (int ax = 0; ax < grid.dim(); ++ax) {
      e.shift[ax] = static_cast<int>(stream.raw(8 + ax) % static_cast<std::uint64_t>(grid.dims()[ax]));
    }
  }
  if (group.conjugate_reflection) e.reflect = (stream.raw(4) & 1) != 0;
  return e;
}

}  // namespace suites

namespace {

using nlohmann::json;

struct TrialOutput {
  int checks = 0;
  int violations = 0;
  std::vector<std::string> jsonl;
  std::vector<std::string> csv;
  std::vector<std::pair<std::string, std::string>> dumps;  // (file suffix, content)
};

std::vector<TrialOutput> run_pool(int trials, int workers,
                                  const std::function<TrialOutput(int)>& fn) {
  std::vector<TrialOutput> results(trials);
  int pool = workers > 0 ? workers : static_cast<int>(std::thread::hardware_concurrency());
  pool = std::clamp(pool, 1, std::max(1, trials));
  if (pool == 1) {
    for (int i = 0; i < trials; ++i) results[i] = fn(i);
    return results;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  std::vector<std::thread> threads;
  threads.reserve(pool);
  for (int w = 0; w < pool; ++w) {
    threads.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= trials) return;
        try {
          results[i] = fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mu);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (std::thread& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
  return results;
}

constexpr int kMaxViolationDumps = 8;

VerifyOutcome write_outputs(const RunConfig& cfg, const std::string& default_base,
                            const std::string& csv_header,
                            const std::vector<TrialOutput>& results) {
  VerifyOutcome out;
  out.trials = static_cast<int>(results.size());
  for (const TrialOutput& r : results) {
    out.checks += r.checks;
    out.violations += r.violations;
  }
  const std::string base = cfg.out_path.empty() ? default_base : cfg.out_path;
  if (cfg.format != "csv") {
    out.jsonl_path = base + ".jsonl";
    std::ofstream jl(out.jsonl_path);
    if (!jl) throw IoError("cannot open '" + out.jsonl_path + "' for writing");
    jl << "{\"run_config\":" << to_json_string(cfg) << "}\n";
    for (const TrialOutput& r : results) {
      for (const std::string& line : r.jsonl) jl << line << '\n';
    }
    if (!jl) throw IoError("write failure on '" + out.jsonl_path + "'");
  }
  if (cfg.format != "jsonl") {
    out.csv_path = base + ".csv";
    std::ofstream cs(out.csv_path);
    if (!cs) throw IoError("cannot open '" + out.csv_path + "' for writing");
    cs << csv_header << '\n';
    for (const TrialOutput& r : results) {
      for (const std::string& row : r.csv) cs << row << '\n';
    }
    if (!cs) throw IoError("write failure on '" + out.csv_path + "'");
  }
  int dumped = 0;
  for (const TrialOutput& r : results) {
    for (const auto& [suffix, content] : r.dumps) {
      if (dumped >= kMaxViolationDumps) break;
      std::ofstream df(base + "_" + suffix);
      if (df) df << content << '\n';
      ++dumped;
    }
  }
  return out;
}

struct Defaults {
  std::vector<double> s{-1.0, 0.0, 0.5, 2.0};
  std::vector<double> t{-1.0, 0.0, 1.0, 2.0};
  std::vector<double> p{1.0, 4.0 / 3.0, 1.5, 2.0};
};

std::vector<double> or_default(const std::vector<double>& values,
                               const std::vector<double>& fallback) {
  return values.empty() ? fallback : values;
}

double or_default(double value, double fallback) { return value > 0.0 ? value : fallback; }

int trial_dim(const RunConfig& cfg, int trial, bool allow_2d) {
  if (cfg.dim != 0) return cfg.dim;
  return (allow_2d && trial % 8 == 7) ? 2 : 1;
}

json trial_header(const RunConfig& cfg, int trial, const char* kind, const GridSpec& grid) {
  json doc;
  doc["trial"] = trial;
  doc["target"] = cfg.target;
  doc["kind"] = kind;
  doc["seed"] = cfg.seed;
  doc["grid"] = {{"dims", grid.dims()}, {"spacing", grid.spacing()}};
  return doc;
}

void dump_pair(TrialOutput& out, int trial, const SampledField& f, const SampledField& g) {
  out.dumps.emplace_back("violation_trial" + std::to_string(trial) + "_f.json", to_fld_json(f));
  out.dumps.emplace_back("violation_trial" + std::to_string(trial) + "_g.json", to_fld_json(g));
}

// ---------------------------------------------------------------------------
// verify targets
// ---------------------------------------------------------------------------

TrialOutput lemma_trial(const RunConfig& cfg, int trial) {
  const double tol = or_default(cfg.tolerance, 1e-10);
  const std::vector<double> s_values = or_default(cfg.s_values, Defaults{}.s);
  static constexpr double kFractions[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  const double fraction = kFractions[trial % 5];
  const GridSpec grid = suites::band_grid(trial_dim(cfg, trial, true), cfg.grid_samples,
                                          cfg.spacing);
  OverlapSpec spec{grid, CounterRng(cfg.seed).substream(trial).seed(), fraction, cfg.bins};
  auto [f, g] = overlap_pair(spec);

  TrialOutput out;
  for (double s : s_values) {
    const LemmaGap gap = lemma_gap(f, g, s);
    const double margin = gap.magnitude_term + gap.multiplier_term - gap.lhs;
    bool ok = margin >= -tol * gap.lhs;
    if (fraction == 0.0) {
      // Disjoint supports force equality and a vanishing multiplier term.
      ok = ok && std::abs(gap.lhs - gap.magnitude_term) <= tol * gap.lhs &&
           gap.multiplier_term <= tol * gap.lhs;
    }
    ++out.checks;
    if (!ok) {
      ++out.violations;
      dump_pair(out, trial, f, g);
    }
    json line = trial_header(cfg, trial, "band_pair", grid);
    line["overlap_fraction"] = fraction;
    line["s"] = s;
    line["lhs"] = gap.lhs;
    line["magnitude_term"] = gap.magnitude_term;
    line["multiplier_term"] = gap.multiplier_term;
    line["margin"] = margin;
    line["violation"] = !ok;
    out.jsonl.push_back(line.dump());
    std::ostringstream row;
    row << trial << ',' << grid.dim() << ',' << format_double(fraction) << ','
        << format_double(s) << ',' << format_double(gap.lhs) << ','
        << format_double(gap.magnitude_term) << ',' << format_double(gap.multiplier_term)
        << ',' << format_double(margin) << ',' << (ok ? 0 : 1);
    out.csv.push_back(row.str());
  }
  return out;
}

TrialOutput theorem_trial(const RunConfig& cfg, int trial) {
  const double tol = or_default(cfg.tolerance, 1e-8);
  const Defaults defaults;
  const std::vector<double> s_values = or_default(cfg.s_values, defaults.s);
  const std::vector<double> t_values = or_default(cfg.t_values, defaults.t);
  const std::vector<double> p_values = or_default(cfg.p_values, defaults.p);

  const bool allow_2d = cfg.group.is_identity_only();
  const int dim = trial_dim(cfg, trial, allow_2d);
  const GridSpec grid = suites::mixture_grid(dim, cfg.grid_samples, cfg.spacing);
  const CounterRng stream = CounterRng(cfg.seed).substream(trial);

  const bool planted = !cfg.group.is_identity_only() && trial % 4 == 1;
  const bool near_equal = !planted && trial % 5 == 3;
  const char* kind = planted ? "planted" : (near_equal ? "near_equal" : "random");

  SampledField f = suites::gaussian_mixture(grid, stream.substream(1));
  SampledField g = [&] {
    if (planted) {
      return apply_element(suites::random_element(grid, cfg.group, stream.substream(2)), f);
    }
    SampledField other = suites::gaussian_mixture(grid, stream.substream(3));
    if (near_equal) return add(scale(f, cplx(0.9, 0.0)), scale(other, cplx(0.05, 0.0)));
    return other;
  }();

  const StabilityOptions options{cfg.constant_mode, cfg.subgrid_refine, kDefaultDetectTau};

  TrialOutput out;
  const double nf2 = [&] {
    double worst = 0.0;
    for (double s : s_values) {
      const double v = sobolev_norm(f, s);
      worst = std::max(worst, v * v);
    }
    return worst;
  }();

  for (double s : s_values) {
    // The gap decomposition depends on s only; hoist it out of the (t, p)
    // sweep.
    const LemmaGap gap = cfg.group.is_identity_only() ? lemma_gap(f, g, s)
                                                      : LemmaGap{0.0, 0.0, 0.0, false};
    for (double t : t_values) {
      for (double p : p_values) {
        const StabilityParams params(s, t, p, dim);
        const FinitenessFlags flags = finiteness_conditions(params, MaskMeta{0.0, false});
        if (!flags.continuum_meaningful()) continue;

        const StabilityReport report = stability_bound(f, g, params, cfg.group, options);
        ++out.checks;
        const double denom = std::max(report.rhs, 1e-9 * nf2);
        bool ok = report.margin >= -tol * denom;

        if (cfg.group.is_identity_only()) {
          ok = ok && gap.multiplier_term <=
                         report.coefficient * report.apriori_term + tol * denom;
        }
        if (planted) {
          const double nf = sobolev_norm(f, s);
          ok = ok && std::sqrt(report.lhs) <= 1e-10 * nf &&
               report.magnitude_term <= 1e-10 * nf * nf;
        }
        if (!ok) {
          ++out.violations;
          dump_pair(out, trial, f, g);
        }

        json line = trial_header(cfg, trial, kind, grid);
        line["report"] = detail::stability_to_json(report);
        line["violation"] = !ok;
        out.jsonl.push_back(line.dump());
        out.csv.push_back(std::to_string(trial) + "," + std::string(kind) + "," +
                          stability_csv_row(report) + "," + (ok ? "0" : "1"));
      }
    }
  }
  return out;
}

TrialOutput appendix_a_trial(const RunConfig& cfg, int trial) {
  const double tol = or_default(cfg.tolerance, 1e-10);
  const std::vector<double> s_values = or_default(cfg.s_values, Defaults{}.s);
  const double s = s_values[trial % s_values.size()];
  static constexpr double kFractions[] = {0.0, 0.25, 0.5, 0.75};
  const double fraction = kFractions[trial % 4];
  const GridSpec grid = suites::band_grid(trial_dim(cfg, trial, true), cfg.grid_samples,
                                          cfg.spacing);
  OverlapSpec spec{grid, CounterRng(cfg.seed).substream(trial).seed(), fraction, cfg.bins};
  auto [f, g] = overlap_pair(spec);

  TrialOutput out;
  const double ratio = disjointness_ratio(f, g, s);
  const double r0 = r_zero(f, g, s);

  // Two-route agreement: relative on interior ratios, absolute near zero
  // where the square-root cancellation dominates both routes.
  ++out.checks;
  bool ok_routes = fraction == 0.0 ? (r0 <= 1e-7 && ratio <= 1e-7)
                                   : std::abs(r0 - ratio) <= 1e-10 * std::max(ratio, 1e-3);
  if (!ok_routes) ++out.violations;

  // Membership threshold scan on a 1e-3 grid. The formula route for r0
  // carries sqrt-of-rounding noise (~1e-8 near zero), so grid points inside
  // a 1e-7 window of the threshold are not classified.
  ++out.checks;
  bool ok_scan = true;
  for (int i = 0; i < 1000; ++i) {
    const double r = i * 1e-3;
    if (std::abs(r - r0) <= 1e-7) continue;
    const bool member = ratio <= r + 1e-12;
    if (member != (r >= r0)) {
      ok_scan = false;
      break;
    }
  }
  if (!ok_scan) ++out.violations;

  // Conditional bound at the threshold and at a slack level.
  bool ok_bound = true;
  double margin_r0 = 0.0, margin_mid = 0.0;
  if (r0 < 1.0) {
    const ConditionalReport at_r0 = conditional_bound(f, g, s, r0);
    const double mid = std::min(0.5 * (1.0 + r0), 0.999);
    const ConditionalReport at_mid = conditional_bound(f, g, s, mid);
    margin_r0 = at_r0.margin;
    margin_mid = at_mid.margin;
    ok_bound = at_r0.margin >= -tol * at_r0.rhs && at_mid.margin >= -tol * at_mid.rhs &&
               at_r0.rhs <= at_mid.rhs * (1.0 + tol);
  }
  ++out.checks;
  if (!ok_bound) ++out.violations;

  const ConditionalReport quotient = quotient_conditional_bound(f, g, s, cfg.group);
  ++out.checks;
  const bool ok_quotient =
      quotient.trivial_ratio >= 1.0 - tol && quotient.margin >= -tol * quotient.rhs;
  if (!ok_quotient) ++out.violations;

  const bool ok = ok_routes && ok_scan && ok_bound && ok_quotient;
  if (!ok) dump_pair(out, trial, f, g);

  json line = trial_header(cfg, trial, "band_pair", grid);
  line["overlap_fraction"] = fraction;
  line["s"] = s;
  line["ratio"] = ratio;
  line["r0"] = r0;
  line["margin_at_r0"] = margin_r0;
  line["margin_at_mid"] = margin_mid;
  line["report"] = detail::conditional_to_json(quotient);
  line["violation"] = !ok;
  out.jsonl.push_back(line.dump());
  std::ostringstream row;
  row << trial << ',' << grid.dim() << ',' << format_double(fraction) << ','
      << format_double(s) << ',' << format_double(ratio) << ',' << format_double(r0) << ','
      << format_double(quotient.trivial_ratio) << ',' << format_double(quotient.margin) << ','
      << (ok ? 0 : 1);
  out.csv.push_back(row.str());
  return out;
}

TrialOutput appendix_b_trial(const RunConfig& cfg, int trial) {
  const double tol = or_default(cfg.tolerance, 1e-10);
  const GridSpec grid = suites::band_grid(trial_dim(cfg, trial, true), cfg.grid_samples,
                                          cfg.spacing);
  const CounterRng stream = CounterRng(cfg.seed).substream(trial);

  const char* kinds[] = {"disjoint", "partial", "nested", "equal_magnitude", "identical"};
  const int variant = trial % 5;
  SampledField f(grid, std::vector<cplx>(grid.size()));
  SampledField g = f;
  if (variant <= 2) {
    const double fraction = variant == 0 ? 0.0 : (variant == 1 ? 0.5 : 1.0);
    OverlapSpec spec{grid, stream.seed(), fraction, cfg.bins};
    std::tie(f, g) = overlap_pair(spec);
  } else {
    OverlapSpec spec{grid, stream.seed(), 1.0, cfg.bins};
    f = overlap_pair(spec).first;
    if (variant == 3) {
      // Same magnitudes, scrambled phases: ghat = u_k fhat with |u_k| = 1.
      SpectralField F = forward_transform(f);
      std::vector<cplx> gs(F.values());
      for (std::size_t k = 0; k < gs.size(); ++k) {
        gs[k] *= std::polar(1.0, stream.uniform(1000 + k) * 2.0 * std::numbers::pi);
      }
      g = inverse_transform(SpectralField(grid, std::move(gs), *f.declared_mask()));
    } else {
      g = f;
    }
  }

  const UnimodularResult result = unimodular_optimal_multiplier(f, g);
  const SpectralField F = forward_transform(f);
  const SpectralField G = forward_transform(g);
  double mag2 = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double d = std::abs(F.values()[k]) - std::abs(G.values()[k]);
    mag2 += grid.freq_cell() * d * d;
  }
  const double magnitude_distance = std::sqrt(mag2);
  double unimodular_error = 0.0;
  for (const cplx& a : result.multiplier.values()) {
    unimodular_error = std::max(unimodular_error, std::abs(std::abs(a) - 1.0));
  }

  TrialOutput out;
  ++out.checks;
  const double scale = std::max(magnitude_distance, lp_norm(f, 2.0));
  const bool ok =
      std::abs(result.distance - magnitude_distance) <= tol * scale && unimodular_error <= 1e-12;
  if (!ok) {
    ++out.violations;
    dump_pair(out, trial, f, g);
  }

  json line = trial_header(cfg, trial, kinds[variant], grid);
  line["distance"] = result.distance;
  line["magnitude_distance"] = magnitude_distance;
  line["unimodular_error"] = unimodular_error;
  line["violation"] = !ok;
  out.jsonl.push_back(line.dump());
  std::ostringstream row;
  row << trial << ',' << grid.dim() << ',' << kinds[variant] << ','
      << format_double(result.distance) << ',' << format_double(magnitude_distance) << ','
      << format_double(unimodular_error) << ',' << (ok ? 0 : 1);
  out.csv.push_back(row.str());
  return out;
}

TrialOutput embedding_trial(const RunConfig& cfg, int trial) {
  const double tol = or_default(cfg.tolerance, 1e-8);
  const Defaults defaults;
  const std::vector<double> s_values = or_default(cfg.s_values, defaults.s);
  const std::vector<double> t_values = or_default(cfg.t_values, defaults.t);
  const std::vector<double> p_values = or_default(cfg.p_values, defaults.p);

  const int dim = trial_dim(cfg, trial, true);
  const bool band = trial % 3 == 2;
  const GridSpec grid = band ? suites::band_grid(dim, cfg.grid_samples, cfg.spacing)
                             : suites::mixture_grid(dim, cfg.grid_samples, cfg.spacing);
  const CounterRng stream = CounterRng(cfg.seed).substream(trial);
  const SampledField f = [&]() -> SampledField {
    if (!band) return suites::gaussian_mixture(grid, stream.substream(1));
    OverlapSpec spec{grid, stream.seed(), 1.0, cfg.bins};
    return overlap_pair(spec).first;
  }();

  TrialOutput out;
  for (double s : s_values) {
    for (double t : t_values) {
      for (double p : p_values) {
        const StabilityParams params(s, t, p, dim);
        if (!(s < t - params.threshold_a())) continue;
        const EstimateSides sides = sobolev_embedding_check(f, params, cfg.constant_mode);
        const double margin = sides.rhs - sides.lhs;
        ++out.checks;
        const bool ok = margin >= -tol * sides.rhs;
        if (!ok) {
          ++out.violations;
          out.dumps.emplace_back("violation_trial" + std::to_string(trial) + "_f.json",
                                 to_fld_json(f));
        }
        json line = trial_header(cfg, trial, band ? "band" : "mixture", grid);
        line["s"] = s;
        line["t"] = t;
        line["p"] = p;
        line["lhs"] = sides.lhs;
        line["rhs"] = sides.rhs;
        line["margin"] = margin;
        line["violation"] = !ok;
        out.jsonl.push_back(line.dump());
        std::ostringstream row;
        row << trial << ',' << dim << ',' << format_double(s) << ',' << format_double(t)
            << ',' << format_double(p) << ',' << format_double(sides.lhs) << ','
            << format_double(sides.rhs) << ',' << format_double(margin) << ','
            << (ok ? 0 : 1);
        out.csv.push_back(row.str());
      }
    }
  }
  return out;
}

TrialOutput steinerberger_trial(const RunConfig& cfg, int trial) {
  const double tol = or_default(cfg.tolerance, 1e-8);
  const GridSpec grid = suites::band_grid(trial_dim(cfg, trial, false), cfg.grid_samples,
                                          cfg.spacing);
  const CounterRng stream = CounterRng(cfg.seed).substream(trial);
  static constexpr double kFractions[] = {0.25, 0.5, 0.75, 1.0};
  OverlapSpec spec{grid, stream.seed(), kFractions[trial % 4], cfg.bins, true};
  auto [f, base_g] = overlap_pair(spec);

  // Every third trial perturbs with a complex spectrum so the imaginary
  // term is exercised; otherwise g keeps a real spectrum as well.
  SampledField g = [&]() -> SampledField {
    if (trial % 3 == 2) {
      BandSpec perturb{grid, *base_g.declared_mask(), stream.substream(9).seed(), 0.3, false};
      return add(f, band_limited_random(perturb));
    }
    return add(f, scale(base_g, cplx(0.25, 0.0)));
  }();

  const SteinerbergerSides sides = steinerberger_bound(f, g);
  const StabilityParams params(0.0, 0.0, 1.0, grid.dim());
  const StabilityReport theorem =
      stability_bound(f, g, params, GroupSpec::identity_only(),
                      StabilityOptions{cfg.constant_mode, false, kDefaultDetectTau});
  const double theorem_bound = std::sqrt(std::max(0.0, theorem.rhs));

  TrialOutput out;
  out.checks += 2;
  const bool ok_estimate = sides.lhs <= sides.rhs + tol * sides.rhs;
  const bool ok_dominance = theorem_bound <= sides.rhs * (1.0 + tol);
  if (!ok_estimate) ++out.violations;
  if (!ok_dominance) ++out.violations;
  if (!ok_estimate || !ok_dominance) dump_pair(out, trial, f, g);

  json line = trial_header(cfg, trial, "real_spectrum_pair", grid);
  line["lhs"] = sides.lhs;
  line["rhs"] = sides.rhs;
  line["magnitude_term"] = sides.magnitude_term;
  line["l1_term"] = sides.l1_term;
  line["imaginary_term"] = sides.imaginary_term;
  line["support_measure"] = sides.support_measure;
  line["theorem_bound"] = theorem_bound;
  line["violation"] = !(ok_estimate && ok_dominance);
  out.jsonl.push_back(line.dump());
  std::ostringstream row;
  row << trial << ',' << format_double(sides.lhs) << ',' << format_double(sides.rhs) << ','
      << format_double(theorem_bound) << ',' << format_double(sides.support_measure) << ','
      << ((ok_estimate && ok_dominance) ? 0 : 1);
  out.csv.push_back(row.str());
  return out;
}

std::string csv_header_for(const std::string& target) {
  if (target == "lemma") {
    return "trial,dim,overlap_fraction,s,lhs,magnitude_term,multiplier_term,margin,violation";
  }
  if (target == "theorem") {
    return "trial,kind," + stability_csv_header() + ",violation";
  }
  if (target == "appendix-a") {
    return "trial,dim,overlap_fraction,s,ratio,r0,trivial_ratio,margin,violation";
  }
  if (target == "appendix-b") {
    return "trial,dim,kind,distance,magnitude_distance,unimodular_error,violation";
  }
  if (target == "embedding") {
    return "trial,dim,s,t,p,lhs,rhs,margin,violation";
  }
  return "trial,lhs,rhs,theorem_bound,support_measure,violation";
}

}  // namespace

VerifyOutcome run_verify(const RunConfig& cfg) {
  std::function<TrialOutput(int)> fn;
  if (cfg.target == "lemma") {
    fn = [&cfg](int i) { return lemma_trial(cfg, i); };
  } else if (cfg.target == "theorem") {
    fn = [&cfg](int i) { return theorem_trial(cfg, i); };
  } else if (cfg.target == "appendix-a") {
    fn = [&cfg](int i) { return appendix_a_trial(cfg, i); };
  } else if (cfg.target == "appendix-b") {
    fn = [&cfg](int i) { return appendix_b_trial(cfg, i); };
  } else if (cfg.target == "embedding") {
    fn = [&cfg](int i) { return embedding_trial(cfg, i); };
  } else if (cfg.target == "compare-steinerberger") {
    fn = [&cfg](int i) { return steinerberger_trial(cfg, i); };
  } else {
    throw ConfigError("verify: unknown target '" + cfg.target +
                      "' (expected lemma, theorem, appendix-a, appendix-b, embedding, "
                      "compare-steinerberger)");
  }
  const std::vector<TrialOutput> results = run_pool(cfg.trials, cfg.workers, fn);
  return write_outputs(cfg, "phasebound_" + cfg.target, csv_header_for(cfg.target), results);
}

int run_certify(const RunConfig& cfg) {
  if (cfg.input_f.empty() || cfg.input_g.empty()) {
    throw ConfigError("certify: two input field paths are required");
  }
  const SampledField f = read_sampled_field(cfg.input_f);
  const SampledField g = read_sampled_field(cfg.input_g);
  const double tol = or_default(cfg.tolerance, 1e-8);
  const double s = cfg.s_values.empty() ? 0.0 : cfg.s_values.front();
  const double t = cfg.t_values.empty() ? 0.0 : cfg.t_values.front();
  const double p = cfg.p_values.empty() ? 1.0 : cfg.p_values.front();
  const StabilityParams params(s, t, p, f.grid().dim());
  const StabilityOptions options{cfg.constant_mode, cfg.subgrid_refine, kDefaultDetectTau};
  const StabilityReport report = stability_bound(f, g, params, cfg.group, options);

  int violations = report.margin < -tol * report.rhs ? 1 : 0;

  json cert;
  cert["run_config"] = json::parse(to_json_string(cfg));
  cert["inputs"] = {{"f", cfg.input_f}, {"g", cfg.input_g}};
  cert["report"] = detail::stability_to_json(report);
  if (cfg.appendix_a) {
    const ConditionalOptions copts{cfg.allow_detected, kDefaultDetectTau};
    const ConditionalReport quotient = quotient_conditional_bound(f, g, s, cfg.group, copts);
    cert["conditional"] = detail::conditional_to_json(quotient);
    if (quotient.margin < -tol * quotient.rhs) ++violations;
  }
  cert["violations"] = violations;

  const std::string path = cfg.out_path.empty() ? "certificate.json" : cfg.out_path;
  std::ofstream outfile(path);
  if (!outfile) throw IoError("cannot open '" + path + "' for writing");
  outfile << cert.dump(2) << '\n';
  if (!outfile) throw IoError("write failure on '" + path + "'");
  return violations;
}

void run_scan(const RunConfig& cfg) {
  static const std::vector<std::string> kAxes = {"overlap_fraction", "s", "t", "p", "L"};
  const auto check_axis = [&](const std::string& axis) {
    if (std::find(kAxes.begin(), kAxes.end(), axis) == kAxes.end()) {
      throw ConfigError("scan: unknown axis '" + axis +
                        "' (expected overlap_fraction, s, t, p, L)");
    }
  };
  if (cfg.axis1.empty()) throw ConfigError("scan: at least one axis is required");
  check_axis(cfg.axis1);
  if (cfg.axis1_values.empty()) throw ConfigError("scan: axis1 has no values");
  if (!cfg.axis2.empty()) {
    check_axis(cfg.axis2);
    if (cfg.axis2_values.empty()) throw ConfigError("scan: axis2 has no values");
  } else if (!cfg.axis2_values.empty()) {
    throw ConfigError("scan: axis2 values given without an axis name");
  }

  const GridSpec grid = suites::band_grid(cfg.dim == 0 ? 1 : cfg.dim, cfg.grid_samples,
                                          cfg.spacing);
  struct Knobs {
    double overlap;
    double s;
    double t;
    double p;
    int bins;
  };
  const Knobs base{cfg.overlap_fraction, cfg.s_values.empty() ? 0.0 : cfg.s_values.front(),
                   cfg.t_values.empty() ? 0.0 : cfg.t_values.front(),
                   cfg.p_values.empty() ? 1.0 : cfg.p_values.front(), cfg.bins};
  const auto apply_axis = [](Knobs& knobs, const std::string& axis, double value) {
    if (axis == "overlap_fraction") {
      knobs.overlap = value;
    } else if (axis == "s") {
      knobs.s = value;
    } else if (axis == "t") {
      knobs.t = value;
    } else if (axis == "p") {
      knobs.p = value;
    } else {
      knobs.bins = static_cast<int>(value);
    }
  };

  std::vector<std::string> rows;
  const std::vector<double> outer = cfg.axis1_values;
  const std::vector<double> inner = cfg.axis2.empty() ? std::vector<double>{0.0}
                                                      : cfg.axis2_values;
  for (double v1 : outer) {
    for (double v2 : inner) {
      Knobs knobs = base;
      apply_axis(knobs, cfg.axis1, v1);
      if (!cfg.axis2.empty()) apply_axis(knobs, cfg.axis2, v2);

      OverlapSpec spec{grid, cfg.seed, knobs.overlap, knobs.bins};
      auto [f, g] = overlap_pair(spec);
      const StabilityParams params(knobs.s, knobs.t, knobs.p, grid.dim());
      const StabilityOptions options{cfg.constant_mode, false, kDefaultDetectTau};
      const StabilityReport report = stability_bound(f, g, params, cfg.group, options);
      double trivial_ratio = std::numeric_limits<double>::quiet_NaN();
      if (*f.declared_mask() != *g.declared_mask()) {
        trivial_ratio =
            quotient_conditional_bound(f, g, knobs.s, cfg.group).trivial_ratio;
      }

      std::ostringstream row;
      row << format_double(v1);
      if (!cfg.axis2.empty()) row << ',' << format_double(v2);
      row << ',' << format_double(report.lhs) << ',' << format_double(report.rhs) << ','
          << format_double(report.margin) << ',' << format_double(report.magnitude_term)
          << ',' << format_double(report.coefficient) << ','
          << format_double(report.apriori_term) << ',' << format_double(trivial_ratio);
      rows.push_back(row.str());
    }
  }

  const std::string base_path = cfg.out_path.empty() ? "phasebound_scan" : cfg.out_path;
  const std::string path = base_path + ".csv";
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << cfg.axis1;
  if (!cfg.axis2.empty()) out << ',' << cfg.axis2;
  out << ",lhs,rhs,margin,magnitude_term,coefficient,apriori_term,trivial_ratio\n";
  for (const std::string& row : rows) out << row << '\n';
  if (!out) throw IoError("write failure on '" + path + "'");
}

void run_gen(const RunConfig& cfg) {
  if (cfg.out_path.empty()) throw ConfigError("gen: an output path is required");
  const int dim = cfg.dim == 0 ? 1 : cfg.dim;
  const GridSpec grid = cfg.target == "gaussian" || cfg.target == "modulated-gaussian"
                            ? suites::mixture_grid(dim, cfg.grid_samples, cfg.spacing)
                            : suites::band_grid(dim, cfg.grid_samples, cfg.spacing);

  if (cfg.target == "gaussian" || cfg.target == "modulated-gaussian") {
    GaussianSpec spec{grid};
    spec.amplitude = cplx(cfg.amplitude, 0.0);
    spec.width = cfg.width > 0 ? cfg.width : grid.extent(0) / 20.0;
    spec.center = cfg.center;
    if (cfg.target == "modulated-gaussian") spec.modulation = cfg.modulation;
    write_sampled_field(cfg.out_path, gaussian_field(spec));
    return;
  }
  if (cfg.target == "band") {
    OverlapSpec mask_spec{grid, cfg.seed, 1.0, cfg.bins, cfg.real_spectrum};
    BandSpec spec{grid, overlap_masks(mask_spec).first, cfg.seed, cfg.amplitude,
                  cfg.real_spectrum};
    write_sampled_field(cfg.out_path, band_limited_random(spec));
    return;
  }
  if (cfg.target == "pair") {
    if (cfg.out_second.empty()) {
      throw ConfigError("gen pair: a second output path is required");
    }
    OverlapSpec spec{grid, cfg.seed, cfg.overlap_fraction, cfg.bins, cfg.real_spectrum};
    auto [f, g] = overlap_pair(spec);
    write_sampled_field(cfg.out_path, f);
    write_sampled_field(cfg.out_second, g);
    return;
  }
  if (cfg.target == "from-spectrum") {
    if (cfg.input_f.empty()) throw ConfigError("gen from-spectrum: an input path is required");
    const SpectralField F = read_spectral_field(cfg.input_f);
    write_sampled_field(cfg.out_path, from_spectrum(F.grid(), F.values()));
    return;
  }
  throw ConfigError("gen: unknown family '" + cfg.target +
                    "' (expected gaussian, modulated-gaussian, band, pair, from-spectrum)");
}

}  // namespace phasebound
