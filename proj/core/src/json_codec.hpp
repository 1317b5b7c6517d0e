#pragma once

#include <json.hpp>

#include "phasebound/ambiguity.hpp"
#include "phasebound/bounds.hpp"
#include "phasebound/conditional.hpp"

namespace phasebound::detail {

nlohmann::json element_to_json(const AmbiguityElement& e);
AmbiguityElement element_from_json(const nlohmann::json& doc);

nlohmann::json group_to_json(const GroupSpec& g);
nlohmann::json conditions_to_json(const FinitenessFlags& flags);
nlohmann::json stability_to_json(const StabilityReport& report);
nlohmann::json conditional_to_json(const ConditionalReport& report);

}  // namespace phasebound::detail
