#include <benchmark/benchmark.h>

#include "opsel/components.hpp"
#include "opsel/edge.hpp"
#include "opsel/filters.hpp"
#include "opsel/morphology.hpp"
#include "opsel/synth.hpp"

namespace {

opsel::GrayImage sample_image(int side) {
    opsel::SynthOptions o;
    o.count = 1;
    o.width = side;
    o.height = side;
    return opsel::generate_shapes(o).front().image;
}

void BM_Median(benchmark::State& state) {
    const auto img = sample_image(static_cast<int>(state.range(0)));
    const int size = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(opsel::median_filter(img, size));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(img.size()));
}
BENCHMARK(BM_Median)->Args({64, 3})->Args({64, 5})->Args({256, 3});

void BM_Wiener(benchmark::State& state) {
    const auto img = sample_image(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(opsel::wiener_filter(img, 5));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(img.size()));
}
BENCHMARK(BM_Wiener)->Arg(64)->Arg(256);

void BM_Edge(benchmark::State& state) {
    const auto img = sample_image(64);
    const auto method = static_cast<opsel::EdgeMethod>(state.range(0));
    state.SetLabel(std::string(opsel::to_string(method)));
    for (auto _ : state) benchmark::DoNotOptimize(opsel::edge_detect(img, method, 0.05));
}
BENCHMARK(BM_Edge)->DenseRange(0, 4);

void BM_AreaOpen(benchmark::State& state) {
    const auto edges = opsel::edge_detect(sample_image(static_cast<int>(state.range(0))), opsel::EdgeMethod::Sobel, 0.02);
    for (auto _ : state) benchmark::DoNotOptimize(opsel::area_open(edges, 10));
}
BENCHMARK(BM_AreaOpen)->Arg(64)->Arg(256);

void BM_FillHoles(benchmark::State& state) {
    const auto edges = opsel::edge_detect(sample_image(128), opsel::EdgeMethod::Sobel, 0.1);
    for (auto _ : state) benchmark::DoNotOptimize(opsel::fill_holes(edges));
}
BENCHMARK(BM_FillHoles);

}  // namespace
