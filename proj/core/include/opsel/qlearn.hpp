#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "opsel/metrics.hpp"
#include "opsel/pipeline.hpp"
#include "opsel/random.hpp"
#include "opsel/sample.hpp"

namespace opsel {

struct LearnerConfig {
    double alpha = 0.5;
    double gamma = 0.8;
    double eps_explore = 0.5;
    int episodes = 200;
    int steps_per_episode = 80;
    std::uint64_t rng_seed = 1;

    /// Throws E_CONFIG when a field is out of range.
    void validate() const;

    friend bool operator==(const LearnerConfig&, const LearnerConfig&) = default;
};

struct MetricsConfig {
    ErrorWeights weights;
    RewardThresholds thresholds;

    friend bool operator==(const MetricsConfig&, const MetricsConfig&) = default;
};

/// Ratios of a result to its reference: component count, foreground pixel
/// count, longest contour. A zero reference denominator yields +inf.
struct FeatureVector {
    double chi1 = 0.0;
    double chi2 = 0.0;
    double chi3 = 0.0;
};

/// Reference-side statistics, computed once per training image.
struct ReferenceStats {
    std::size_t components = 0;
    std::size_t foreground = 0;
    std::size_t longest_contour = 0;

    static ReferenceStats of(const BinaryImage& reference);
};

FeatureVector extract_features(const BinaryImage& result, const ReferenceStats& reference);
FeatureVector extract_features(const BinaryImage& result, const BinaryImage& reference);

using StateId = std::uint32_t;

/// Bin edges shared by all three features: [0,0.5) [0.5,0.9) [0.9,1.1)
/// [1.1,2) [2,inf].
inline constexpr std::array<double, 4> kFeatureBinEdges{0.5, 0.9, 1.1, 2.0};
inline constexpr int kFeatureBins = 5;
/// Row used before any action has been taken.
inline constexpr StateId kStartState = 0;
inline constexpr std::size_t kNumStates = kFeatureBins * kFeatureBins * kFeatureBins + 1;

int feature_bin(double value);

/// Maps a feature vector to 1 + b1*25 + b2*5 + b3. Throws E_ARG on negative
/// or NaN components.
StateId discretize(const FeatureVector& f);

/// Dense state x action table, zero-initialized.
class QTable {
public:
    QTable() = default;
    QTable(std::size_t states, std::size_t actions);

    std::size_t states() const noexcept { return states_; }
    std::size_t actions() const noexcept { return actions_; }

    double& operator()(StateId s, std::uint64_t a) { return values_[s * actions_ + a]; }
    double operator()(StateId s, std::uint64_t a) const { return values_[s * actions_ + a]; }

    std::span<const double> row(StateId s) const {
        return std::span<const double>(values_).subspan(s * actions_, actions_);
    }
    std::span<double> row(StateId s) { return std::span<double>(values_).subspan(s * actions_, actions_); }

    double max_value(StateId s) const;
    /// Lowest index among the maxima.
    std::uint64_t argmax(StateId s) const;

    std::span<const double> values() const noexcept { return values_; }

    friend bool operator==(const QTable&, const QTable&) = default;

private:
    std::size_t states_ = 0;
    std::size_t actions_ = 0;
    std::vector<double> values_;
};

/// Epsilon-greedy: a uniformly random action with probability eps_explore,
/// otherwise the greedy one. Always consumes one uniform draw, plus one more
/// when exploring.
std::uint64_t select_action(const QTable& q, StateId s, double eps_explore, Rng& rng);

/// q[s,a] <- (1 - alpha) q[s,a] + alpha (r + gamma max_a' q[s_next,a'])
void q_update(QTable& q, StateId s, std::uint64_t a, double r, StateId s_next, double alpha, double gamma);

/// Outcome of running one action on one training image.
struct Outcome {
    double d = 0.0;
    StateId next_state = kStartState;
};

/// Runs pipelines against the dataset and memoizes (image, action)
/// outcomes; the pipeline is deterministic so repeats are free.
class Evaluator {
public:
    Evaluator(const ActionSpace& space, std::span<const Sample> dataset, MetricsConfig metrics);

    const ActionSpace& space() const noexcept { return *space_; }
    std::size_t dataset_size() const noexcept { return dataset_.size(); }
    const MetricsConfig& metrics() const noexcept { return metrics_; }

    Outcome evaluate(std::size_t image, std::uint64_t action);

    /// Distinct (image, action) pairs actually executed so far.
    std::size_t evaluations() const noexcept { return cache_.size(); }

private:
    const ActionSpace* space_;
    std::span<const Sample> dataset_;
    MetricsConfig metrics_;
    std::vector<ReferenceStats> stats_;
    std::unordered_map<std::uint64_t, Outcome> cache_;
};

struct StepRecord {
    std::uint64_t action = 0;
    double d = 0.0;
    int reward = 0;
    StateId state = kStartState;
    StateId next_state = kStartState;
};

using EpisodeTrace = std::vector<StepRecord>;

/// One episode on one image: from the start state, repeatedly pick an
/// action, run it on the original image, reward it, update q and move to the
/// state of the result. Stops after steps_per_episode steps or on a
/// terminal reward.
EpisodeTrace run_episode(Evaluator& env, std::size_t image, QTable& q, const LearnerConfig& cfg, Rng& rng);

/// What a parameter learner reports for its combination.
struct PaResult {
    Combination combination;
    /// Position of the combination in enumeration order.
    std::size_t combination_index = 0;
    Action best_action;
    /// Mean D of best_action over the dataset.
    double quality = 0.0;
    std::vector<double> per_image_d;
    std::uint64_t seed = 0;
    int episodes = 0;
    std::uint64_t total_steps = 0;
    std::uint64_t action_space_size = 0;
    QTable q;
};

/// Trains on `dataset` (episode i uses image i mod |dataset|) and reports
/// the greedy action from the start state. Throws E_DATASET when empty.
PaResult train(const ActionSpace& space, std::span<const Sample> dataset, const LearnerConfig& cfg,
               const MetricsConfig& metrics);

}  // namespace opsel
