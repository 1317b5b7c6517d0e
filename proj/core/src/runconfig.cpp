#include "phasebound/runconfig.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "phasebound/errors.hpp"

namespace phasebound {

namespace {

using nlohmann::json;

template <typename T>
void read_if(const json& doc, const char* key, T& out) {
  if (doc.contains(key)) out = doc.at(key).get<T>();
}

}  // namespace

std::string to_json_string(const RunConfig& cfg) {
  json doc;
  doc["command"] = cfg.command;
  doc["target"] = cfg.target;
  doc["suite"] = cfg.suite;
  doc["trials"] = cfg.trials;
  doc["seed"] = cfg.seed;
  doc["dim"] = cfg.dim;
  doc["grid_samples"] = cfg.grid_samples;
  doc["spacing"] = cfg.spacing;
  doc["s_values"] = cfg.s_values;
  doc["t_values"] = cfg.t_values;
  doc["p_values"] = cfg.p_values;
  doc["group"] = cfg.group.name();
  doc["constant_mode"] = cfg.constant_mode == ConstantMode::one ? "one" : "beckner";
  doc["tolerance"] = cfg.tolerance;
  doc["allow_detected"] = cfg.allow_detected;
  doc["subgrid_refine"] = cfg.subgrid_refine;
  doc["workers"] = cfg.workers;
  doc["out"] = cfg.out_path;
  doc["format"] = cfg.format;
  doc["axis1"] = cfg.axis1;
  doc["axis2"] = cfg.axis2;
  doc["axis1_values"] = cfg.axis1_values;
  doc["axis2_values"] = cfg.axis2_values;
  doc["overlap_fraction"] = cfg.overlap_fraction;
  doc["bins"] = cfg.bins;
  doc["input_f"] = cfg.input_f;
  doc["input_g"] = cfg.input_g;
  doc["out_second"] = cfg.out_second;
  doc["width"] = cfg.width;
  doc["amplitude"] = cfg.amplitude;
  doc["center"] = cfg.center;
  doc["modulation"] = cfg.modulation;
  doc["real_spectrum"] = cfg.real_spectrum;
  doc["appendix_a"] = cfg.appendix_a;
  return doc.dump();
}

RunConfig runconfig_from_json_string(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: parse failure: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");
  RunConfig cfg;
  try {
    read_if(doc, "command", cfg.command);
    read_if(doc, "target", cfg.target);
    read_if(doc, "suite", cfg.suite);
    read_if(doc, "trials", cfg.trials);
    read_if(doc, "seed", cfg.seed);
    read_if(doc, "dim", cfg.dim);
    read_if(doc, "grid_samples", cfg.grid_samples);
    read_if(doc, "spacing", cfg.spacing);
    read_if(doc, "s_values", cfg.s_values);
    read_if(doc, "t_values", cfg.t_values);
    read_if(doc, "p_values", cfg.p_values);
    if (doc.contains("group")) cfg.group = GroupSpec::parse(doc.at("group").get<std::string>());
    if (doc.contains("constant_mode")) {
      const std::string mode = doc.at("constant_mode").get<std::string>();
      if (mode == "one") {
        cfg.constant_mode = ConstantMode::one;
      } else if (mode == "beckner") {
        cfg.constant_mode = ConstantMode::beckner;
      } else {
        throw ConfigError("config: constant_mode must be 'beckner' or 'one'");
      }
    }
    read_if(doc, "tolerance", cfg.tolerance);
    read_if(doc, "allow_detected", cfg.allow_detected);
    read_if(doc, "subgrid_refine", cfg.subgrid_refine);
    read_if(doc, "workers", cfg.workers);
    read_if(doc, "out", cfg.out_path);
    read_if(doc, "format", cfg.format);
    read_if(doc, "axis1", cfg.axis1);
    read_if(doc, "axis2", cfg.axis2);
    read_if(doc, "axis1_values", cfg.axis1_values);
    read_if(doc, "axis2_values", cfg.axis2_values);
    read_if(doc, "overlap_fraction", cfg.overlap_fraction);
    read_if(doc, "bins", cfg.bins);
    read_if(doc, "input_f", cfg.input_f);
    read_if(doc, "input_g", cfg.input_g);
    read_if(doc, "out_second", cfg.out_second);
    read_if(doc, "width", cfg.width);
    read_if(doc, "amplitude", cfg.amplitude);
    read_if(doc, "center", cfg.center);
    read_if(doc, "modulation", cfg.modulation);
    read_if(doc, "real_spectrum", cfg.real_spectrum);
    read_if(doc, "appendix_a", cfg.appendix_a);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: malformed field: ") + e.what());
  } catch (const ParameterError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (cfg.trials < 1) throw ConfigError("config: trials must be positive");
  if (cfg.format != "jsonl" && cfg.format != "csv" && cfg.format != "both") {
    throw ConfigError("config: format must be jsonl, csv or both");
  }
  return cfg;
}

RunConfig load_runconfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return runconfig_from_json_string(buf.str());
}

}  // namespace phasebound
