#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "opsel/orchestrator.hpp"

namespace opsel {

// Task configuration file (JSON). Layout:
//
//   {
//     "phases":  [ { "name": "...", "operators": [ { "name": "edge",
//                     "params": { "method": ["sobel"], "threshold": [0.02] } } ] } ],
//     "metrics": { "weights": { "w1": .., "w2": .., "w3": .. },
//                  "eps_quality": 0.1, "delta": 0.1 },
//     "learner": { "alpha": 0.5, "gamma": 0.8, "eps_explore": 0.5,
//                  "episodes": 200, "steps": 80, "seed": 1 },
//     "dataset": { "path": "data", "ground_truth_suffix": "_gt" },
//     "run":     { "workers": 1 }
//   }
//
// "phases" and "dataset.path" are required; everything else has defaults.
// Unknown keys are rejected and reported with their JSON pointer.

/// Relative dataset paths are resolved against `base_dir`. Throws E_CONFIG.
TaskConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});

/// Parses the file; relative dataset paths are taken relative to it.
TaskConfig load_config(const std::filesystem::path& path);

/// Inverse of parse_config (paths are written as stored).
nlohmann::ordered_json config_to_json(const TaskConfig& cfg);

nlohmann::ordered_json param_to_json(const ParamValue& v);
/// Throws E_CONFIG for values that are neither numbers nor strings.
ParamValue param_from_json(const nlohmann::json& v, const std::string& where);

}  // namespace opsel
