// Batch driver for spectral phase-retrieval stability estimates.
//
// Exit codes: 0 all checks passed, 1 at least one inequality violation
// finding, 2 configuration error, 3 I/O error.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "phasebound/driver.hpp"
#include "phasebound/errors.hpp"
#include "phasebound/runconfig.hpp"

namespace {

using phasebound::ConfigError;
using phasebound::RunConfig;

void add_common_flags(CLI::App* cmd, RunConfig& cfg, std::string& group_name,
                      std::string& config_path, bool& constant_one) {
  cmd->add_option("--suite", cfg.suite, "Suite preset: default (200 trials) or quick (25)")
      ->check(CLI::IsMember({"default", "quick"}));
  cmd->add_option("--s", cfg.s_values, "Sobolev order(s) s")->delimiter(',');
  cmd->add_option("--t", cfg.t_values, "Bessel order(s) t")->delimiter(',');
  cmd->add_option("--p", cfg.p_values, "Lebesgue exponent(s) p in [1,2]")->delimiter(',');
  cmd->add_option("--group", group_name, "Ambiguity group")
      ->check(CLI::IsMember({"id", "phase", "phase+shift", "phase+shift+reflect"}));
  cmd->add_flag("--constant-one", constant_one,
                "Use c = 1 instead of the sharp transform norm");
  cmd->add_option("--tol", cfg.tolerance, "Relative violation tolerance");
  cmd->add_option("--seed", cfg.seed, "Base seed for all pseudo-random draws");
  cmd->add_option("--grid", cfg.grid_samples, "Samples per axis (even, >= 4)");
  cmd->add_option("--spacing", cfg.spacing, "Grid spacing h");
  cmd->add_option("--dim", cfg.dim, "Dimension (1 or 2; default mixes both)")
      ->check(CLI::Range(1, 2));
  cmd->add_option("--out", cfg.out_path, "Output base path");
  cmd->add_option("--format", cfg.format, "Report stream format")
      ->check(CLI::IsMember({"jsonl", "csv", "both"}));
  cmd->add_flag("--allow-detected", cfg.allow_detected,
                "Allow thresholded masks where declared masks are required");
  cmd->add_flag("--subgrid-refine", cfg.subgrid_refine,
                "Refine translations below the grid cell");
  cmd->add_option("--trials", cfg.trials, "Trials per suite");
  cmd->add_option("--workers", cfg.workers, "Worker threads (0 = hardware)");
  cmd->add_option("--config", config_path, "Load a RunConfig JSON file first");
}

void finalize(RunConfig& cfg, const std::string& group_name, bool constant_one) {
  if (!group_name.empty()) cfg.group = phasebound::GroupSpec::parse(group_name);
  if (constant_one) cfg.constant_mode = phasebound::ConstantMode::one;
  if (cfg.suite == "quick" && cfg.trials == RunConfig{}.trials) cfg.trials = 25;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral toolkit for Fourier phase-retrieval stability estimates"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string group_name;
  std::string config_path;
  bool constant_one = false;

  CLI::App* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("target", cfg.target, "Suite to run")
      ->required()
      ->check(CLI::IsMember({"lemma", "theorem", "appendix-a", "appendix-b", "embedding",
                             "compare-steinerberger"}));
  add_common_flags(verify, cfg, group_name, config_path, constant_one);

  CLI::App* certify = app.add_subcommand("certify", "Certify a bound for two field files");
  certify->add_option("f", cfg.input_f, "FLD-JSON file for f")->required();
  certify->add_option("g", cfg.input_g, "FLD-JSON file for g")->required();
  certify->add_flag("--appendix-a", cfg.appendix_a,
                    "Also evaluate the conditional estimates (declared masks only)");
  add_common_flags(certify, cfg, group_name, config_path, constant_one);

  CLI::App* scan = app.add_subcommand("scan", "Sweep one or two parameter axes");
  scan->add_option("--axis1", cfg.axis1, "First axis: overlap_fraction, s, t, p or L");
  scan->add_option("--values1", cfg.axis1_values, "Values for axis1")->delimiter(',');
  scan->add_option("--axis2", cfg.axis2, "Second axis (optional)");
  scan->add_option("--values2", cfg.axis2_values, "Values for axis2")->delimiter(',');
  scan->add_option("--overlap", cfg.overlap_fraction, "Base overlap fraction");
  scan->add_option("--bins", cfg.bins, "Support bins per axis");
  add_common_flags(scan, cfg, group_name, config_path, constant_one);

  CLI::App* gen = app.add_subcommand("gen", "Generate fields into FLD-JSON files");
  gen->add_option("family", cfg.target, "gaussian, modulated-gaussian, band, pair, from-spectrum")
      ->required();
  gen->add_option("--out2", cfg.out_second, "Second output (pair family)");
  gen->add_option("--in", cfg.input_f, "Input spectrum (from-spectrum family)");
  gen->add_option("--width", cfg.width, "Gaussian width");
  gen->add_option("--amplitude", cfg.amplitude, "Amplitude");
  gen->add_option("--center", cfg.center, "Gaussian center per axis")->delimiter(',');
  gen->add_option("--modulation", cfg.modulation, "Modulation wave vector")->delimiter(',');
  gen->add_option("--overlap", cfg.overlap_fraction, "Pair overlap fraction");
  gen->add_option("--bins", cfg.bins, "Support bins per axis");
  gen->add_flag("--real-spectrum", cfg.real_spectrum, "Draw real spectral coefficients");
  add_common_flags(gen, cfg, group_name, config_path, constant_one);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!config_path.empty()) {
      // The config file provides the base; explicitly passed flags win.
      const RunConfig loaded = phasebound::load_runconfig(config_path);
      if (cfg.s_values.empty()) cfg.s_values = loaded.s_values;
      if (cfg.t_values.empty()) cfg.t_values = loaded.t_values;
      if (cfg.p_values.empty()) cfg.p_values = loaded.p_values;
      if (cfg.tolerance == 0.0) cfg.tolerance = loaded.tolerance;
      if (cfg.grid_samples == 0) cfg.grid_samples = loaded.grid_samples;
      if (cfg.spacing == 0.0) cfg.spacing = loaded.spacing;
      if (cfg.dim == 0) cfg.dim = loaded.dim;
      if (cfg.out_path.empty()) cfg.out_path = loaded.out_path;
      if (group_name.empty()) cfg.group = loaded.group;
      if (cfg.trials == RunConfig{}.trials) cfg.trials = loaded.trials;
      if (cfg.workers == 0) cfg.workers = loaded.workers;
      if (cfg.seed == RunConfig{}.seed) cfg.seed = loaded.seed;
    }
    finalize(cfg, group_name, constant_one);

    if (verify->parsed()) {
      cfg.command = "verify";
      const phasebound::VerifyOutcome outcome = phasebound::run_verify(cfg);
      std::printf("%s: %d trials, %d checks, %d violations\n", cfg.target.c_str(),
                  outcome.trials, outcome.checks, outcome.violations);
      if (!outcome.jsonl_path.empty()) std::printf("wrote %s\n", outcome.jsonl_path.c_str());
      if (!outcome.csv_path.empty()) std::printf("wrote %s\n", outcome.csv_path.c_str());
      return outcome.violations > 0 ? 1 : 0;
    }
    if (certify->parsed()) {
      cfg.command = "certify";
      const int violations = phasebound::run_certify(cfg);
      std::printf("certificate written to %s (%d violations)\n",
                  cfg.out_path.empty() ? "certificate.json" : cfg.out_path.c_str(), violations);
      return violations > 0 ? 1 : 0;
    }
    if (scan->parsed()) {
      cfg.command = "scan";
      phasebound::run_scan(cfg);
      std::printf("scan table written to %s.csv\n",
                  cfg.out_path.empty() ? "phasebound_scan" : cfg.out_path.c_str());
      return 0;
    }
    cfg.command = "gen";
    phasebound::run_gen(cfg);
    std::printf("field(s) written to %s\n", cfg.out_path.c_str());
    return 0;
  } catch (const phasebound::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const phasebound::IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return 3;
  } catch (const phasebound::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "unexpected error: %s\n", e.what());
    return 3;
  }
}
