#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "phasebound/ambiguity.hpp"
#include "phasebound/bounds.hpp"

namespace phasebound {

/// Everything a run needs; a run is reproducible from its RunConfig alone.
/// Zero-valued numeric knobs mean "per-target default".
struct RunConfig {
  std::string command;  ///< verify | certify | scan | gen
  std::string target;   ///< verify target or gen family
  std::string suite = "default";

  int trials = 200;
  std::uint64_t seed = 0x00c0ffee5eedull;
  int dim = 0;             ///< 0 = target default mix of 1-d and 2-d trials
  int grid_samples = 0;    ///< per-axis N; 0 = target default
  double spacing = 0.0;    ///< h; 0 = target default

  std::vector<double> s_values;
  std::vector<double> t_values;
  std::vector<double> p_values;
  GroupSpec group = GroupSpec::identity_only();
  ConstantMode constant_mode = ConstantMode::beckner;
  double tolerance = 0.0;  ///< relative violation tolerance; 0 = target default
  bool allow_detected = false;
  bool subgrid_refine = false;
  int workers = 0;  ///< 0 = hardware concurrency

  std::string out_path;       ///< base path for report files
  std::string format = "both";  ///< jsonl | csv | both

  // scan
  std::string axis1;
  std::string axis2;
  std::vector<double> axis1_values;
  std::vector<double> axis2_values;
  double overlap_fraction = 0.5;
  int bins = 0;

  // certify / gen
  std::string input_f;
  std::string input_g;
  std::string out_second;  ///< second output for pair generation
  double width = 0.0;
  double amplitude = 1.0;
  std::vector<double> center;
  std::vector<double> modulation;
  bool real_spectrum = false;
  bool appendix_a = false;
};

std::string to_json_string(const RunConfig& cfg);
/// Throws ConfigError on malformed or inconsistent content.
RunConfig runconfig_from_json_string(const std::string& text);
/// Reads and parses a config file; IoError on unreadable files.
RunConfig load_runconfig(const std::string& path);

}  // namespace phasebound
