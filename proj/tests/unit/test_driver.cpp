#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "phasebound/driver.hpp"
#include "phasebound/errors.hpp"

using namespace phasebound;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Trial lines only: the header line embeds the config, which legitimately
// differs in knobs that do not touch numerics (workers).
std::string trial_lines(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::string line, out;
  bool first = true;
  while (std::getline(in, line)) {
    if (first) {
      first = false;
      continue;
    }
    out += line;
    out += '\n';
  }
  return out;
}

RunConfig small_verify(const std::string& target, const std::string& out, int workers) {
  RunConfig cfg;
  cfg.command = "verify";
  cfg.target = target;
  cfg.trials = 12;
  cfg.workers = workers;
  cfg.out_path = out;
  return cfg;
}

}  // namespace

TEST_CASE("every verify target runs clean at small scale") {
  for (const std::string target :
       {"lemma", "theorem", "appendix-a", "appendix-b", "embedding",
        "compare-steinerberger"}) {
    const VerifyOutcome outcome =
        run_verify(small_verify(target, "/tmp/pb_unit_" + target, 2));
    CAPTURE(target);
    CHECK(outcome.violations == 0);
    CHECK(outcome.trials == 12);
    CHECK(outcome.checks > 0);
  }
}

TEST_CASE("unknown target is a config error") {
  CHECK_THROWS_AS(run_verify(small_verify("riemann-hypothesis", "/tmp/pb_unit_x", 1)),
                  ConfigError);
}

TEST_CASE("outputs are bitwise reproducible across runs and worker counts") {
  const VerifyOutcome a = run_verify(small_verify("theorem", "/tmp/pb_repro_a", 1));
  const VerifyOutcome b = run_verify(small_verify("theorem", "/tmp/pb_repro_b", 4));
  const VerifyOutcome c = run_verify(small_verify("theorem", "/tmp/pb_repro_c", 1));
  CHECK(slurp(a.csv_path) == slurp(b.csv_path));
  CHECK(slurp(a.csv_path) == slurp(c.csv_path));
  CHECK(trial_lines(a.jsonl_path) == trial_lines(b.jsonl_path));
  CHECK(trial_lines(a.jsonl_path) == trial_lines(c.jsonl_path));
}

TEST_CASE("scan validates its axes") {
  RunConfig cfg;
  cfg.command = "scan";
  cfg.out_path = "/tmp/pb_scan_unit";
  CHECK_THROWS_AS(run_scan(cfg), ConfigError);  // no axis
  cfg.axis1 = "q";
  cfg.axis1_values = {1.0};
  CHECK_THROWS_AS(run_scan(cfg), ConfigError);  // unknown axis
  cfg.axis1 = "p";
  cfg.axis1_values.clear();
  CHECK_THROWS_AS(run_scan(cfg), ConfigError);  // empty values
}

TEST_CASE("scan coefficient column matches a recomputation") {
  RunConfig cfg;
  cfg.command = "scan";
  cfg.axis1 = "p";
  cfg.axis1_values = {1.0, 1.25, 1.5, 2.0};
  cfg.out_path = "/tmp/pb_scan_p";
  run_scan(cfg);

  std::ifstream in("/tmp/pb_scan_p.csv");
  REQUIRE(in);
  std::string header;
  std::getline(in, header);
  CHECK(header.rfind("p,", 0) == 0);

  // rebuild the fixed pair the scan used and recompute the coefficient
  const GridSpec grid = suites::band_grid(1);
  auto [f, g] = overlap_pair(OverlapSpec{grid, cfg.seed, cfg.overlap_fraction, 0});
  const SupportMask common = intersect(*f.declared_mask(), *g.declared_mask());

  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    REQUIRE(cells.size() == 8);
    const double p = std::stod(cells[0]);
    const double coefficient = std::stod(cells[5]);
    const StabilityParams params(0.0, 0.0, p, 1);
    const double expected =
        beckner_constant(1, p) * weight_norm(common, 0.0, params.coefficient_exponent());
    CHECK(coefficient == doctest::Approx(expected).epsilon(1e-12));
    ++rows;
  }
  CHECK(rows == 4);
}

TEST_CASE("scan records the trivial-ratio trend over the overlap axis") {
  RunConfig cfg;
  cfg.command = "scan";
  cfg.axis1 = "overlap_fraction";
  cfg.axis1_values = {0.0, 0.25, 0.5, 0.75};
  cfg.out_path = "/tmp/pb_scan_overlap";
  run_scan(cfg);
  std::ifstream in("/tmp/pb_scan_overlap.csv");
  REQUIRE(in);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    const auto pos = line.rfind(',');
    const double trivial_ratio = std::stod(line.substr(pos + 1));
    CHECK(trivial_ratio >= 1.0 - 1e-10);
  }
}
