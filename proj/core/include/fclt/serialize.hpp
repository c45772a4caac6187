#pragma once

#include <nlohmann/json.hpp>

#include "fclt/paths.hpp"
#include "fclt/stable.hpp"

namespace fclt {

// {"alpha":..,"beta":..,"dispersion":..,"location":..}
nlohmann::json to_json(const StableParams& p);
StableParams stable_params_from_json(const nlohmann::json& j);

// {"family":"pareto","tail_index":1.5,"scale":1,"shift":0}, etc.
nlohmann::json to_json(const DoaSpec& spec);
DoaSpec doa_spec_from_json(const nlohmann::json& j);

}  // namespace fclt
