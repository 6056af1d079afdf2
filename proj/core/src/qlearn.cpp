#include "opsel/qlearn.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "opsel/components.hpp"

namespace opsel {
namespace {

double ratio(std::size_t num, std::size_t den) {
    if (den == 0) return std::numeric_limits<double>::infinity();
    return static_cast<double>(num) / static_cast<double>(den);
}

std::size_t longest(const std::vector<std::size_t>& v) {
    return v.empty() ? 0 : *std::max_element(v.begin(), v.end());
}

}  // namespace

void LearnerConfig::validate() const {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw Error(errc::kConfig, "alpha must be in (0, 1]");
    if (!(gamma >= 0.0 && gamma < 1.0)) throw Error(errc::kConfig, "gamma must be in [0, 1)");
    if (!(eps_explore >= 0.0 && eps_explore <= 1.0)) throw Error(errc::kConfig, "eps_explore must be in [0, 1]");
    if (episodes < 1) throw Error(errc::kConfig, "episodes must be >= 1");
    if (steps_per_episode < 1) throw Error(errc::kConfig, "steps must be >= 1");
}

ReferenceStats ReferenceStats::of(const BinaryImage& reference) {
    const auto contours = contour_lengths(reference, Connectivity::Eight);
    return {contours.size(), count_foreground(reference), longest(contours)};
}

FeatureVector extract_features(const BinaryImage& result, const ReferenceStats& reference) {
    const auto contours = contour_lengths(result, Connectivity::Eight);
    return {ratio(contours.size(), reference.components), ratio(count_foreground(result), reference.foreground),
            ratio(longest(contours), reference.longest_contour)};
}

FeatureVector extract_features(const BinaryImage& result, const BinaryImage& reference) {
    if (!result.same_shape(reference)) throw Error(errc::kDimension, "result and reference differ in shape");
    return extract_features(result, ReferenceStats::of(reference));
}

int feature_bin(double value) {
    if (std::isnan(value) || value < 0.0) {
        throw Error(errc::kArgument, "feature value must be non-negative, got " + std::to_string(value));
    }
    int bin = 0;
    while (bin < static_cast<int>(kFeatureBinEdges.size()) && value >= kFeatureBinEdges[static_cast<std::size_t>(bin)]) {
        ++bin;
    }
    return bin;
}

StateId discretize(const FeatureVector& f) {
    const int b1 = feature_bin(f.chi1);
    const int b2 = feature_bin(f.chi2);
    const int b3 = feature_bin(f.chi3);
    return static_cast<StateId>(1 + (b1 * kFeatureBins + b2) * kFeatureBins + b3);
}

QTable::QTable(std::size_t states, std::size_t actions)
    : states_(states), actions_(actions), values_(states * actions, 0.0) {
    if (states == 0 || actions == 0) throw Error(errc::kArgument, "Q-table needs at least one state and action");
}

double QTable::max_value(StateId s) const {
    const auto r = row(s);
    return *std::max_element(r.begin(), r.end());
}

std::uint64_t QTable::argmax(StateId s) const {
    const auto r = row(s);
    // max_element returns the first maximum.
    return static_cast<std::uint64_t>(std::max_element(r.begin(), r.end()) - r.begin());
}

std::uint64_t select_action(const QTable& q, StateId s, double eps_explore, Rng& rng) {
    if (uniform01(rng) < eps_explore) return uniform_index(rng, q.actions());
    return q.argmax(s);
}

void q_update(QTable& q, StateId s, std::uint64_t a, double r, StateId s_next, double alpha, double gamma) {
    const double target = r + gamma * q.max_value(s_next);
    q(s, a) = (1.0 - alpha) * q(s, a) + alpha * target;
}

Evaluator::Evaluator(const ActionSpace& space, std::span<const Sample> dataset, MetricsConfig metrics)
    : space_(&space), dataset_(dataset), metrics_(metrics) {
    stats_.reserve(dataset.size());
    for (const auto& s : dataset) {
        if (s.image.width() != s.reference.width() || s.image.height() != s.reference.height()) {
            throw Error(errc::kDimension, "sample '" + s.name + "': image and reference differ in shape");
        }
        stats_.push_back(ReferenceStats::of(s.reference));
    }
}

Outcome Evaluator::evaluate(std::size_t image, std::uint64_t action) {
    const std::uint64_t key = action * dataset_.size() + image;
    if (const auto it = cache_.find(key); it != cache_.end()) return it->second;
    const Sample& sample = dataset_[image];
    const BinaryImage result = apply_pipeline(sample.image, *space_, action);
    const double d = quality(result, sample.reference, metrics_.weights);
    const Outcome out{d, discretize(extract_features(result, stats_[image]))};
    cache_.emplace(key, out);
    return out;
}

EpisodeTrace run_episode(Evaluator& env, std::size_t image, QTable& q, const LearnerConfig& cfg, Rng& rng) {
    EpisodeTrace trace;
    StateId s = kStartState;
    for (int step = 0; step < cfg.steps_per_episode; ++step) {
        const std::uint64_t a = select_action(q, s, cfg.eps_explore, rng);
        const Outcome out = env.evaluate(image, a);
        const Reward r = reward(out.d, env.metrics().thresholds);
        // A terminal step has no successor value to bootstrap from.
        q_update(q, s, a, r.value, out.next_state, cfg.alpha, r.terminal ? 0.0 : cfg.gamma);
        trace.push_back({a, out.d, r.value, s, out.next_state});
        s = out.next_state;
        if (r.terminal) break;
    }
    return trace;
}

PaResult train(const ActionSpace& space, std::span<const Sample> dataset, const LearnerConfig& cfg,
               const MetricsConfig& metrics) {
    if (dataset.empty()) throw Error(errc::kDataset, "training dataset is empty");
    cfg.validate();
    Evaluator env(space, dataset, metrics);
    QTable q(kNumStates, space.size());
    Rng rng(cfg.rng_seed);

    PaResult result;
    for (int episode = 0; episode < cfg.episodes; ++episode) {
        const auto trace = run_episode(env, static_cast<std::size_t>(episode) % dataset.size(), q, cfg, rng);
        result.total_steps += trace.size();
    }

    const std::uint64_t best = q.argmax(kStartState);
    result.combination = space.combination();
    result.best_action = decode_action(space, best);
    result.per_image_d.reserve(dataset.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        const double d = env.evaluate(i, best).d;
        result.per_image_d.push_back(d);
        sum += d;
    }
    result.quality = sum / static_cast<double>(dataset.size());
    result.seed = cfg.rng_seed;
    result.episodes = cfg.episodes;
    result.action_space_size = space.size();
    result.q = std::move(q);
    return result;
}

}  // namespace opsel
