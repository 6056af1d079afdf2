#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "opsel/orchestrator.hpp"

namespace opsel {

// Model files are JSON with a format tag and version. Each learner result
// stores its operators with their full grids and the best action both as an
// index and as explicit values, so the model stays usable if the task
// config is later edited. Q-tables are not persisted.

inline constexpr const char* kModelFormat = "opsel-model";

nlohmann::ordered_json model_to_json(const LearnedModel& model);

/// Throws E_MODEL with the offending JSON pointer on schema violations.
LearnedModel model_from_json(const nlohmann::json& doc);

/// Pretty-printed with a trailing newline; identical models give identical bytes.
std::string serialize_model(const LearnedModel& model);

void save_model(const LearnedModel& model, const std::filesystem::path& path);
LearnedModel load_model(const std::filesystem::path& path);

}  // namespace opsel
