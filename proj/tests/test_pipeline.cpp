#include <gtest/gtest.h>

#include <set>

#include "opsel/components.hpp"
#include "opsel/config.hpp"
#include "opsel/edge.hpp"
#include "opsel/filters.hpp"
#include "opsel/morphology.hpp"
#include "opsel/pipeline.hpp"
#include "oracles.hpp"

namespace opsel {
namespace {

using I = std::int64_t;

std::vector<Phase> three_phase_phases() {
    return load_config(std::filesystem::path(OPSEL_SOURCE_DIR) / "configs" / "three_phase.json").phases;
}

OperatorSpec spec_size(const std::string& name, std::vector<ParamValue> sizes) {
    return make_operator_spec(name, {{"size", std::move(sizes)}});
}

TEST(Combinations, ThreePhaseConfigYieldsThree) {
    const auto combos = enumerate_combinations(three_phase_phases());
    ASSERT_EQ(combos.size(), 3u);
    EXPECT_EQ(combos[0].label(), "medfilt2+edge+bwareaopen");
    EXPECT_EQ(combos[1].label(), "wiener2+edge+bwareaopen");
    EXPECT_EQ(combos[2].label(), "ordfilt2+edge+bwareaopen");
    for (const auto& c : combos) {
        const ActionSpace space = build_action_space(c);
        EXPECT_EQ(space.size(), 288u);
        EXPECT_EQ(space.dims(), (std::vector<std::size_t>{2, 4, 9, 4, 1}));
    }
}

TEST(Combinations, ProductRuleAndOrder) {
    const Phase a{"a", {spec_size("medfilt2", {I{3}}), spec_size("wiener2", {I{3}}), spec_size("ordfilt2", {I{3}})}};
    const OperatorSpec sobel =
        make_operator_spec("edge", {{"method", {std::string("sobel")}}, {"threshold", {0.1}}});
    const Phase b{"b", {sobel}};
    const Phase c{"c",
                  {make_operator_spec("bwareaopen", {{"min_size", {I{5}}}, {"conn", {I{8}}}}),
                   make_operator_spec("imfill", {{"mode", {std::string("holes")}}})}};
    const auto combos = enumerate_combinations({a, b, c});
    ASSERT_EQ(combos.size(), 6u);
    EXPECT_EQ(combos[0].label(), "medfilt2+edge+bwareaopen");
    EXPECT_EQ(combos[1].label(), "medfilt2+edge+imfill");
    EXPECT_EQ(combos[2].label(), "wiener2+edge+bwareaopen");
    EXPECT_EQ(combos[5].label(), "ordfilt2+edge+imfill");

    EXPECT_EQ(enumerate_combinations({b}).size(), 1u);
}

TEST(Combinations, DropsIncompatibleChains) {
    const Phase pre{"pre", {spec_size("medfilt2", {I{3}})}};
    const Phase mid{"mid",
                    {make_operator_spec("edge", {{"method", {std::string("sobel")}}, {"threshold", {0.1}}}),
                     spec_size("wiener2", {I{3}})}};
    const auto combos = enumerate_combinations({pre, mid});
    ASSERT_EQ(combos.size(), 1u);
    EXPECT_EQ(combos[0].label(), "medfilt2+edge");

    EXPECT_THROW(enumerate_combinations({pre}), Error);
    EXPECT_THROW(enumerate_combinations({Phase{"empty", {}}}), Error);
    EXPECT_THROW(enumerate_combinations({}), Error);
}

TEST(ActionSpaceTest, DecodeExamples) {
    const Combination c{{make_operator_spec(
        "edge", {{"method", {std::string("sobel"), std::string("log")}}, {"threshold", {0.1, 0.2, 0.3}}})}};
    const ActionSpace space = build_action_space(c);
    ASSERT_EQ(space.dims(), (std::vector<std::size_t>{2, 3}));
    EXPECT_EQ(space.decode(0), (std::vector<ParamValue>{std::string("sobel"), 0.1}));
    EXPECT_EQ(space.decode(5), (std::vector<ParamValue>{std::string("log"), 0.3}));
    // 4 = 1*3 + 1
    EXPECT_EQ(space.decode(4), (std::vector<ParamValue>{std::string("log"), 0.2}));
    EXPECT_THROW(space.decode(6), Error);
    EXPECT_THROW(space.encode({std::string("log"), 0.25}), Error);

    const Combination one{{spec_size("medfilt2", {I{3}})}};
    EXPECT_EQ(build_action_space(one).size(), 1u);
}

TEST(ActionSpaceTest, BijectionOnRandomDims) {
    Rng rng(77);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<ParamValue> sizes, mins, thresholds;
        const std::size_t n1 = 1 + uniform_index(rng, 3);
        const std::size_t n2 = 1 + uniform_index(rng, 4);
        const std::size_t n3 = 1 + uniform_index(rng, 5);
        for (std::size_t i = 0; i < n1; ++i) sizes.push_back(I{3 + 2 * static_cast<I>(i)});
        for (std::size_t i = 0; i < n2; ++i) thresholds.push_back(0.01 * static_cast<double>(i + 1));
        for (std::size_t i = 0; i < n3; ++i) mins.push_back(I{static_cast<I>(i)});
        const Combination c{{spec_size("medfilt2", sizes),
                             make_operator_spec("edge", {{"method", {std::string("sobel")}}, {"threshold", thresholds}}),
                             make_operator_spec("bwareaopen", {{"min_size", mins}, {"conn", {I{4}, I{8}}}})}};
        const ActionSpace space = build_action_space(c);
        ASSERT_EQ(space.size(), n1 * n2 * n3 * 2);
        std::set<std::vector<std::string>> seen;
        for (std::uint64_t i = 0; i < space.size(); ++i) {
            const auto a = space.decode(i);
            ASSERT_EQ(space.encode(a), i);
            std::vector<std::string> key;
            for (const auto& v : a) key.push_back(format_param(v));
            seen.insert(key);
        }
        ASSERT_EQ(seen.size(), space.size());
        ASSERT_EQ(space.decode(space.size() - 1).back(), ParamValue(I{8}));
    }
}

TEST(Pipeline, ConstantImageGivesEmptyResult) {
    const Combination c{{spec_size("medfilt2", {I{3}}),
                         make_operator_spec("edge", {{"method", {std::string("sobel")}}, {"threshold", {0.02}}}),
                         make_operator_spec("bwareaopen", {{"min_size", {I{5}}}, {"conn", {I{8}}}})}};
    const ActionSpace space = build_action_space(c);
    EXPECT_EQ(count_foreground(apply_pipeline(GrayImage(20, 20, 140), space, 0)), 0u);
}

TEST(Pipeline, MatchesManualComposition) {
    const auto combos = enumerate_combinations(three_phase_phases());
    Rng rng(3);
    const GrayImage img = oracle::random_gray(rng, 24, 20);
    const ActionSpace space = build_action_space(combos[1]);
    for (std::uint64_t idx : {std::uint64_t{0}, std::uint64_t{77}, std::uint64_t{287}}) {
        const Action a = decode_action(space, idx);
        const auto& v = a.assignment;
        const GrayImage pre = wiener_filter(img, static_cast<int>(std::get<I>(v[0])));
        const BinaryImage edges = edge_detect(pre, parse_edge_method(std::get<std::string>(v[1])), std::get<double>(v[2]));
        const BinaryImage expected =
            area_open(edges, static_cast<std::size_t>(std::get<I>(v[3])), Connectivity::Eight);
        EXPECT_EQ(apply_pipeline(img, space, a), expected);
        EXPECT_EQ(apply_pipeline(img, combos[1], a), expected);
        EXPECT_EQ(apply_pipeline(img, space, idx), expected);
    }
}

TEST(Pipeline, ReferenceActionIsExpressible) {
    const auto combos = enumerate_combinations(three_phase_phases());
    const ActionSpace space = build_action_space(combos[1]);
    const std::uint64_t idx = space.encode({I{5}, std::string("prewitt"), 0.03, I{10}, I{8}});
    const Action a = decode_action(space, idx);
    EXPECT_EQ(format_action(space, a), "[5, (prewitt, 0.03), (10, 8)]");

    Rng rng(10);
    for (int i = 0; i < 5; ++i) {
        const GrayImage img = oracle::random_gray(rng, 8 + i * 5, 9 + i * 3);
        const BinaryImage out = apply_pipeline(img, space, a);
        EXPECT_EQ(out.width(), img.width());
        EXPECT_EQ(apply_pipeline(img, space, a), out);
    }
}

}  // namespace
}  // namespace opsel
