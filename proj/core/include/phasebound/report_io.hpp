#pragma once

#include <string>

#include "phasebound/ambiguity.hpp"
#include "phasebound/bounds.hpp"
#include "phasebound/conditional.hpp"

namespace phasebound {

/// Deterministic shortest round-trip formatting ("%.17g") used for every
/// floating-point value that lands in a CSV cell.
std::string format_double(double value);

/// {"theta":..., "shift":[...], "tau_frac":[...], "reflect":0|1}
std::string to_json_string(const AmbiguityElement& e);
AmbiguityElement element_from_json_string(const std::string& text);

std::string to_json_string(const StabilityReport& report);
std::string to_json_string(const ConditionalReport& report);

/// Flat CSV projections of the reports; header first, then one row per
/// report, every number formatted with format_double.
std::string stability_csv_header();
std::string stability_csv_row(const StabilityReport& report);
std::string conditional_csv_header();
std::string conditional_csv_row(const ConditionalReport& report);

}  // namespace phasebound
