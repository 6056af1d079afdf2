#include "opsel/orchestrator.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "opsel/image_io.hpp"
#include "opsel/log.hpp"

namespace opsel {

void TaskConfig::validate() const {
    if (phases.empty()) throw Error(errc::kConfig, "no phases configured");
    for (const auto& p : phases)
        if (p.candidates.empty()) throw Error(errc::kConfig, "phase '" + p.name + "' has no operators");
    metrics.weights.validate();
    metrics.thresholds.validate();
    learner.validate();
    if (workers < 1) throw Error(errc::kConfig, "workers must be >= 1");
}

Dataset load_dataset(const std::filesystem::path& dir, const std::string& suffix) {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec)) {
        throw Error(errc::kDataset, "dataset directory not found: " + dir.string());
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && is_raster_path(entry.path())) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    auto is_reference = [&](const std::filesystem::path& p) {
        const std::string stem = p.stem().string();
        return !suffix.empty() && stem.size() > suffix.size() &&
               stem.compare(stem.size() - suffix.size(), suffix.size(), suffix) == 0;
    };

    Dataset out;
    for (const auto& file : files) {
        if (is_reference(file)) continue;
        const auto ref = file.parent_path() / (file.stem().string() + suffix + file.extension().string());
        if (!std::filesystem::is_regular_file(ref, ec)) {
            log::warning("skipping " + file.filename().string() + ": no reference " + ref.filename().string());
            continue;
        }
        Sample s{file.filename().string(), load_gray(file), load_binary(ref)};
        if (s.image.width() != s.reference.width() || s.image.height() != s.reference.height()) {
            throw Error(errc::kDataset, "dimension mismatch between " + file.filename().string() + " and " +
                                            ref.filename().string());
        }
        out.push_back(std::move(s));
    }
    if (out.empty()) throw Error(errc::kDataset, "no image/reference pairs in " + dir.string());
    return out;
}

const PaResult& LearnedModel::winner() const {
    if (results.empty()) throw Error(errc::kModel, "model has no successful combination");
    return results.front();
}

std::uint64_t child_seed(std::uint64_t base_seed, std::size_t index) {
    return base_seed + static_cast<std::uint64_t>(index);
}

bool ranks_before(const PaResult& a, const PaResult& b) {
    if (a.quality != b.quality) return a.quality < b.quality;
    if (a.action_space_size != b.action_space_size) return a.action_space_size < b.action_space_size;
    return a.combination_index < b.combination_index;
}

namespace {

bool selected(const Combination& c, std::size_t index, const std::vector<std::string>& only) {
    if (only.empty()) return true;
    const std::string position = "C" + std::to_string(index + 1);
    return std::any_of(only.begin(), only.end(),
                       [&](const std::string& name) { return name == c.label() || name == position; });
}

}  // namespace

LearnedModel run(const TaskConfig& cfg, const Dataset& dataset, const RunOptions& options) {
    cfg.validate();
    if (dataset.empty()) throw Error(errc::kDataset, "dataset is empty");
    const auto combinations = enumerate_combinations(cfg.phases);

    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < combinations.size(); ++i)
        if (selected(combinations[i], i, options.only)) chosen.push_back(i);
    for (const auto& name : options.only) {
        const bool matched = std::any_of(chosen.begin(), chosen.end(), [&](std::size_t i) {
            return combinations[i].label() == name || "C" + std::to_string(i + 1) == name;
        });
        if (!matched) throw Error(errc::kConfig, "unknown combination '" + name + "'");
    }

    struct Slot {
        std::optional<PaResult> result;
        std::string failure;
    };
    std::vector<Slot> slots(chosen.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t k = next++; k < chosen.size(); k = next++) {
            const std::size_t index = chosen[k];
            const Combination& c = combinations[index];
            try {
                const ActionSpace space(c);
                LearnerConfig lc = cfg.learner;
                lc.rng_seed = child_seed(cfg.learner.rng_seed, index);
                PaResult r = train(space, dataset, lc, cfg.metrics);
                r.combination_index = index;
                log::info("C" + std::to_string(index + 1) + " " + c.label() + ": quality " +
                          std::to_string(r.quality) + " with " + format_action(space, r.best_action));
                slots[k].result = std::move(r);
            } catch (const std::exception& e) {
                log::warning("C" + std::to_string(index + 1) + " " + c.label() + " failed: " + e.what());
                slots[k].failure = e.what();
            }
        }
    };

    const int requested = options.workers.value_or(cfg.workers);
    if (requested < 1) throw Error(errc::kConfig, "workers must be >= 1");
    const std::size_t thread_count = std::min<std::size_t>(static_cast<std::size_t>(requested), chosen.size());
    if (thread_count <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < thread_count; ++t) pool.emplace_back(worker);
    }

    LearnedModel model;
    model.config = cfg;
    for (std::size_t k = 0; k < chosen.size(); ++k) {
        if (slots[k].result) {
            model.results.push_back(std::move(*slots[k].result));
        } else {
            model.failures.push_back({combinations[chosen[k]].label(), slots[k].failure});
        }
    }
    if (model.results.empty()) throw Error(errc::kRun, "every learner failed");
    std::sort(model.results.begin(), model.results.end(), ranks_before);
    return model;
}

LearnedModel run(const TaskConfig& cfg, const RunOptions& options) {
    const Dataset dataset = load_dataset(cfg.dataset_path, cfg.ground_truth_suffix);
    return run(cfg, dataset, options);
}

BinaryImage apply_model(const LearnedModel& model, const GrayImage& img) {
    const PaResult& w = model.winner();
    return apply_pipeline(img, w.combination, w.best_action);
}

}  // namespace opsel
