#include "phasebound/report_io.hpp"

#include <cstdio>
#include <sstream>

#include "json_codec.hpp"
#include "phasebound/errors.hpp"

namespace phasebound {

namespace detail {

using nlohmann::json;

json element_to_json(const AmbiguityElement& e) {
  json doc;
  doc["theta"] = e.theta;
  doc["shift"] = e.shift;
  doc["tau_frac"] = e.tau_frac;
  doc["reflect"] = e.reflect ? 1 : 0;
  return doc;
}

AmbiguityElement element_from_json(const json& doc) {
  AmbiguityElement e;
  e.theta = doc.at("theta").get<double>();
  e.shift = doc.at("shift").get<std::vector<int>>();
  e.tau_frac = doc.at("tau_frac").get<std::vector<double>>();
  e.reflect = doc.at("reflect").get<int>() != 0;
  return e;
}

json group_to_json(const GroupSpec& g) {
  json doc;
  doc["name"] = g.name();
  doc["global_phase"] = g.global_phase;
  doc["translations"] = g.translations;
  doc["conjugate_reflection"] = g.conjugate_reflection;
  return doc;
}

json conditions_to_json(const FinitenessFlags& flags) {
  json doc;
  doc["i_compact"] = flags.compact_support;
  doc["i_grid_vacuous"] = flags.grid_vacuous;
  doc["ii_finite_measure"] = flags.finite_measure;
  doc["iii_sobolev_regime"] = flags.sobolev_regime;
  return doc;
}

json stability_to_json(const StabilityReport& report) {
  json doc;
  doc["s"] = report.params.s;
  doc["t"] = report.params.t;
  doc["p"] = report.params.p;
  doc["n"] = report.params.dim;
  doc["group"] = group_to_json(report.group);
  doc["lhs"] = report.lhs;
  doc["magnitude_term"] = report.magnitude_term;
  doc["coefficient"] = report.coefficient;
  doc["apriori_term"] = report.apriori_term;
  doc["rhs"] = report.rhs;
  doc["margin"] = report.margin;
  doc["conditions"] = conditions_to_json(report.conditions);
  doc["lhs_witness"] = element_to_json(report.lhs_witness);
  doc["apriori_witness"] = element_to_json(report.apriori_witness);
  doc["masks"] = report.masks_declared ? "declared" : "detected";
  doc["intersection_measure"] = report.intersection_measure;
  return doc;
}

json conditional_to_json(const ConditionalReport& report) {
  json doc;
  doc["s"] = report.s;
  doc["r"] = report.r;
  doc["r0"] = report.r0;
  doc["C"] = report.constant;
  doc["lhs"] = report.lhs;
  doc["rhs"] = report.rhs;
  doc["margin"] = report.margin;
  doc["member_x_fr"] = report.member_x_fr;
  doc["member_x_r"] = report.member_x_r;
  doc["trivial_ratio"] = report.trivial_ratio;
  doc["masks"] = report.masks_declared ? "declared" : "detected";
  return doc;
}

}  // namespace detail

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string to_json_string(const AmbiguityElement& e) {
  return detail::element_to_json(e).dump();
}

AmbiguityElement element_from_json_string(const std::string& text) {
  try {
    return detail::element_from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("witness JSON: ") + e.what());
  }
}

std::string to_json_string(const StabilityReport& report) {
  return detail::stability_to_json(report).dump();
}

std::string to_json_string(const ConditionalReport& report) {
  return detail::conditional_to_json(report).dump();
}

std::string stability_csv_header() {
  return "s,t,p,n,group,lhs,magnitude_term,coefficient,apriori_term,rhs,margin,"
         "cond_ii,cond_iii,masks,intersection_measure";
}

std::string stability_csv_row(const StabilityReport& r) {
  std::ostringstream out;
  out << format_double(r.params.s) << ',' << format_double(r.params.t) << ','
      << format_double(r.params.p) << ',' << r.params.dim << ',' << r.group.name() << ','
      << format_double(r.lhs) << ',' << format_double(r.magnitude_term) << ','
      << format_double(r.coefficient) << ',' << format_double(r.apriori_term) << ','
      << format_double(r.rhs) << ',' << format_double(r.margin) << ','
      << (r.conditions.finite_measure ? 1 : 0) << ',' << (r.conditions.sobolev_regime ? 1 : 0)
      << ',' << (r.masks_declared ? "declared" : "detected") << ','
      << format_double(r.intersection_measure);
  return out.str();
}

std::string conditional_csv_header() {
  return "s,r,r0,C,lhs,rhs,margin,member,trivial_ratio,masks";
}

std::string conditional_csv_row(const ConditionalReport& r) {
  std::ostringstream out;
  out << format_double(r.s) << ',' << format_double(r.r) << ',' << format_double(r.r0) << ','
      << format_double(r.constant) << ',' << format_double(r.lhs) << ','
      << format_double(r.rhs) << ',' << format_double(r.margin) << ','
      << (r.member_x_r ? 1 : 0) << ',' << format_double(r.trivial_ratio) << ','
      << (r.masks_declared ? "declared" : "detected");
  return out.str();
}

}  // namespace phasebound
