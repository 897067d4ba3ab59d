#pragma once

#include <string>

#include <json.hpp>

#include "estimator.hpp"
#include "expansion.hpp"

namespace belief {

// A fitted model plus everything needed to reapply it to new data.
struct Model {
    FittedExpansion expansion;
    std::string response_name;
    std::string positive_level;
    std::string negative_level;
    BeliefFit fit;
    CellTable table;
};

// Expansion config from its JSON mirror:
// { "response": {"name", "positive_level"},
//   "variables": [{"name", "kind", "depth", "lo", "hi", "positive_level"}] }
// kinds: "continuous-ecdf" (default), "continuous-known-range", "binary".
ExpansionConfig expansion_config_from_json(const nlohmann::json& j);
std::string response_name_from_json(const nlohmann::json& j);
std::string response_positive_level_from_json(const nlohmann::json& j);

nlohmann::json model_to_json(const Model& model);
Model model_from_json(const nlohmann::json& j);

std::vector<std::string> model_bit_labels(const Model& model);

// Human-readable fit report: slope table, bounds, separation, degeneracy.
std::string fit_report_text(const Model& model);

}  // namespace belief
