#include <benchmark/benchmark.h>

#include "opsel/qlearn.hpp"
#include "opsel/synth.hpp"

namespace {

using I = std::int64_t;

opsel::ActionSpace three_operator_space() {
    return opsel::build_action_space(opsel::Combination{{
        opsel::make_operator_spec("wiener2", {{"size", {I{3}, I{5}}}}),
        opsel::make_operator_spec("edge", {{"method", {std::string("sobel"), std::string("prewitt")}},
                                           {"threshold", {0.02, 0.05, 0.1, 0.2}}}),
        opsel::make_operator_spec("bwareaopen", {{"min_size", {I{5}, I{10}}}, {"conn", {I{8}}}}),
    }});
}

opsel::Dataset dataset(int count) {
    opsel::SynthOptions o;
    o.count = count;
    return opsel::generate_dataset(o);
}

void BM_ApplyPipeline(benchmark::State& state) {
    const auto space = three_operator_space();
    const auto ds = dataset(1);
    std::uint64_t a = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(opsel::apply_pipeline(ds[0].image, space, a));
        a = (a + 1) % space.size();
    }
}
BENCHMARK(BM_ApplyPipeline);

void BM_QUpdate(benchmark::State& state) {
    opsel::QTable q(opsel::kNumStates, 288);
    opsel::Rng rng(1);
    for (auto _ : state) {
        const auto a = opsel::select_action(q, 1, 0.5, rng);
        opsel::q_update(q, 1, a, -10, 2, 0.5, 0.8);
    }
}
BENCHMARK(BM_QUpdate);

// End-to-end training; dominated by the first evaluation of each
// (image, action) pair, later visits hit the cache.
void BM_Train(benchmark::State& state) {
    const auto space = three_operator_space();
    const auto ds = dataset(static_cast<int>(state.range(0)));
    opsel::LearnerConfig cfg;
    cfg.episodes = static_cast<int>(state.range(1));
    cfg.steps_per_episode = 20;
    for (auto _ : state) benchmark::DoNotOptimize(opsel::train(space, ds, cfg, opsel::MetricsConfig{}));
}
BENCHMARK(BM_Train)->Args({5, 50})->Args({20, 200})->Unit(benchmark::kMillisecond);

}  // namespace
