#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "opsel/pipeline.hpp"
#include "opsel/qlearn.hpp"
#include "opsel/sample.hpp"

namespace opsel {

/// Everything a learning run needs: the processing phases with their
/// candidate operators, metric settings, learner settings and the dataset
/// location.
struct TaskConfig {
    std::vector<Phase> phases;
    MetricsConfig metrics;
    LearnerConfig learner;
    std::filesystem::path dataset_path;
    std::string ground_truth_suffix = "_gt";
    int workers = 1;

    void validate() const;

    friend bool operator==(const TaskConfig&, const TaskConfig&) = default;
};

/// Pairs every raster F.ext in `dir` with F<suffix>.ext, in filename order.
/// Images without a reference are skipped with a warning. Throws E_DATASET
/// when no pair forms or a pair differs in shape.
Dataset load_dataset(const std::filesystem::path& dir, const std::string& suffix);

struct LearnerFailure {
    std::string combination;
    std::string reason;

    friend bool operator==(const LearnerFailure&, const LearnerFailure&) = default;
};

struct LearnedModel {
    static constexpr int kFormatVersion = 1;

    /// Successful learners, best first.
    std::vector<PaResult> results;
    std::vector<LearnerFailure> failures;
    TaskConfig config;

    const PaResult& winner() const;
};

struct RunOptions {
    /// Overrides TaskConfig::workers when set.
    std::optional<int> workers;
    /// Restrict learning to these combinations, given as labels
    /// ("wiener2+edge+bwareaopen") or 1-based positions ("C2").
    std::vector<std::string> only;
};

/// Seed of the learner for the combination at `index` in enumeration order.
std::uint64_t child_seed(std::uint64_t base_seed, std::size_t index);

/// Ranking order: lower quality, then smaller action space, then earlier
/// enumeration position.
bool ranks_before(const PaResult& a, const PaResult& b);

/// Trains one learner per combination (concurrently, up to `workers`) and
/// ranks them. A learner that throws is recorded as a failure; the run only
/// fails (E_RUN) when every learner does.
LearnedModel run(const TaskConfig& cfg, const Dataset& dataset, const RunOptions& options = {});

/// Loads the dataset named in the config, then runs.
LearnedModel run(const TaskConfig& cfg, const RunOptions& options = {});

/// Applies the winning pipeline with its best action.
BinaryImage apply_model(const LearnedModel& model, const GrayImage& img);

}  // namespace opsel
