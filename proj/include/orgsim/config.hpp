#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "orgsim/experiment.hpp"

#include <json.hpp>

namespace orgsim {

// Defaults merged with the file content; unknown keys are rejected.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& cfg);

// Cross-field checks on top of validate(ModelParams). Throws
// std::invalid_argument naming the offending field.
void validate(const ExperimentConfig& cfg);

// "key=value" with the value parsed as JSON when possible. Bare model
// parameter names resolve into the model object; "model.x" also works.
void apply_override(nlohmann::json& j, const std::string& key_value);

// Load, apply overrides, validate. Parse errors carry path:line:column.
ExperimentConfig parse_config(const std::filesystem::path& path,
                              const std::vector<std::string>& overrides);

}  // namespace orgsim
