#include <gtest/gtest.h>

#include "opsel/components.hpp"
#include "opsel/edge.hpp"
#include "opsel/filters.hpp"
#include "opsel/morphology.hpp"
#include "opsel/operators.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace opsel {
namespace {

using testing::parse_mask;

bool subset(const BinaryImage& a, const BinaryImage& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.pixels()[i] && !b.pixels()[i]) return false;
    return true;
}

GrayImage step_image(int w, int h) {
    GrayImage img(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = w / 2; x < w; ++x) img.at(x, y) = 255;
    return img;
}

TEST(MedianFilter, Examples) {
    const GrayImage flat(6, 6, 7);
    const GrayImage out = median_filter(flat, 3);
    for (int y = 1; y < 5; ++y)
        for (int x = 1; x < 5; ++x) EXPECT_EQ(out.at(x, y), 7);
    // Zero padding drags corners down: 4 of 9 window values are 7.
    EXPECT_EQ(out.at(0, 0), 0);

    GrayImage spike(5, 5);
    spike.at(2, 2) = 255;
    EXPECT_EQ(median_filter(spike, 3), GrayImage(5, 5));

    EXPECT_EQ(median_filter(GrayImage(1, 1, 200), 3), GrayImage(1, 1, 0));

    EXPECT_THROW(median_filter(flat, 4), Error);
    EXPECT_THROW(median_filter(flat, 0), Error);
}

TEST(OrderFilter, Examples) {
    GrayImage one(3, 3);
    one.at(1, 1) = 9;
    EXPECT_EQ(order_filter(one, 3, 9), GrayImage(3, 3, 9));

    Rng rng(5);
    const GrayImage img = oracle::random_gray(rng, 9, 7);
    const GrayImage low = order_filter(img, 3, 1);
    for (int y = 1; y < 6; ++y)
        for (int x = 1; x < 8; ++x) EXPECT_LE(low.at(x, y), img.at(x, y));

    EXPECT_THROW(order_filter(img, 3, 0), Error);
    EXPECT_THROW(order_filter(img, 3, 10), Error);
    EXPECT_THROW(order_filter(img, 2, 1), Error);
}

TEST(OrderFilter, MatchesSortedWindowOracle) {
    Rng rng(6);
    for (int i = 0; i < 30; ++i) {
        const int w = 1 + static_cast<int>(uniform_index(rng, 12));
        const int h = 1 + static_cast<int>(uniform_index(rng, 12));
        const GrayImage img = oracle::random_gray(rng, w, h);
        const int size = uniform_index(rng, 2) ? 5 : 3;
        const int rank = 1 + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(size * size)));
        const GrayImage out = order_filter(img, size, rank);
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) ASSERT_EQ(out.at(x, y), oracle::window_rank(img, x, y, size, rank));
        ASSERT_EQ(median_filter(img, 3), order_filter(img, 3, 5));
    }
}

// Scalar transcription of the adaptive Wiener formula.
GrayImage wiener_oracle(const GrayImage& img, int size) {
    const int r = size / 2;
    const int w = img.width();
    const int h = img.height();
    std::vector<double> mu(img.size());
    std::vector<double> var(img.size());
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            std::vector<double> vals;
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx)
                    vals.push_back(img.contains(x + dx, y + dy) ? img.at(x + dx, y + dy) : 0.0);
            double m = 0;
            for (double v : vals) m += v;
            m /= static_cast<double>(vals.size());
            double s = 0;
            for (double v : vals) s += (v - m) * (v - m);
            mu[static_cast<std::size_t>(y * w + x)] = m;
            var[static_cast<std::size_t>(y * w + x)] = s / static_cast<double>(vals.size());
        }
    double nu = 0;
    for (double v : var) nu += v;
    nu /= static_cast<double>(var.size());
    GrayImage out(w, h);
    for (std::size_t i = 0; i < img.size(); ++i) {
        const double gain = std::max(var[i] - nu, 0.0) / std::max(var[i], 1e-9);
        const double v = mu[i] + gain * (img.pixels()[i] - mu[i]);
        out.pixels()[i] = static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
    }
    return out;
}

TEST(WienerFilter, Examples) {
    const GrayImage flat(7, 7, 120);
    const GrayImage out = wiener_filter(flat, 3);
    for (int y = 1; y < 6; ++y)
        for (int x = 1; x < 6; ++x) EXPECT_EQ(out.at(x, y), 120);

    // Every 3x3 window holds the spike: mean 10, variance 800 = noise, so
    // the gain vanishes and each pixel becomes its local mean.
    GrayImage spike(3, 3);
    spike.at(1, 1) = 90;
    const GrayImage filtered = wiener_filter(spike, 3);
    EXPECT_EQ(filtered, wiener_oracle(spike, 3));
    EXPECT_EQ(filtered.at(1, 1), 10);

    EXPECT_THROW(wiener_filter(flat, 4), Error);
}

TEST(WienerFilter, MatchesScalarOracle) {
    Rng rng(8);
    for (int i = 0; i < 20; ++i) {
        const GrayImage img = oracle::random_gray(rng, 3 + static_cast<int>(uniform_index(rng, 10)),
                                                  3 + static_cast<int>(uniform_index(rng, 10)));
        for (int size : {3, 5}) {
            const GrayImage a = wiener_filter(img, size);
            const GrayImage b = wiener_oracle(img, size);
            // Different summation order may flip a .5 rounding.
            for (std::size_t k = 0; k < a.size(); ++k) ASSERT_LE(std::abs(a.pixels()[k] - b.pixels()[k]), 1);
        }
    }
}

TEST(EdgeDetect, ConstantImageHasNoEdges) {
    const GrayImage flat(12, 12, 93);
    for (auto m : {EdgeMethod::Sobel, EdgeMethod::Prewitt, EdgeMethod::Log, EdgeMethod::ZeroCross, EdgeMethod::Canny}) {
        for (double t : {0.0, 0.02, 0.5}) EXPECT_EQ(count_foreground(edge_detect(flat, m, t)), 0u) << to_string(m);
    }
}

TEST(EdgeDetect, SobelOnStep) {
    // Columns 3 and 4 straddle the step and both see |gx| = 4 * 255, the
    // image maximum; elsewhere the gradient is zero.
    const BinaryImage out = edge_detect(step_image(8, 6), EdgeMethod::Sobel, 0.5);
    for (int y = 0; y < 6; ++y)
        for (int x = 0; x < 8; ++x) EXPECT_EQ(out.at(x, y), x == 3 || x == 4) << x << "," << y;

    EXPECT_TRUE(subset(edge_detect(step_image(8, 6), EdgeMethod::Sobel, 0.9),
                       edge_detect(step_image(8, 6), EdgeMethod::Sobel, 0.0)));
}

TEST(EdgeDetect, OtherMethodsFindTheStep) {
    const GrayImage step = step_image(16, 10);
    for (auto m : {EdgeMethod::Prewitt, EdgeMethod::Log, EdgeMethod::Canny}) {
        const BinaryImage out = edge_detect(step, m, 0.1);
        EXPECT_GT(count_foreground(out), 0u) << to_string(m);
        for (int y = 0; y < 10; ++y)
            for (int x = 0; x < 16; ++x)
                if (out.at(x, y)) {
                    EXPECT_TRUE(x >= 6 && x <= 9) << to_string(m) << " at " << x;
                }
    }
}

TEST(EdgeDetect, Errors) {
    EXPECT_THROW(parse_edge_method("roberts"), Error);
    EXPECT_THROW(edge_detect(GrayImage(4, 4), EdgeMethod::Sobel, -0.1), Error);
    EXPECT_EQ(parse_edge_method("zerocross"), EdgeMethod::ZeroCross);
}

TEST(EdgeDetect, AntitoneInThreshold) {
    Rng rng(12);
    for (int i = 0; i < 25; ++i) {
        const GrayImage img = oracle::random_gray(rng, 16, 16);
        for (auto m : {EdgeMethod::Sobel, EdgeMethod::Prewitt, EdgeMethod::Canny, EdgeMethod::Log}) {
            BinaryImage prev = edge_detect(img, m, 0.0);
            for (double t : {0.05, 0.1, 0.3, 0.7}) {
                const BinaryImage cur = edge_detect(img, m, t);
                ASSERT_TRUE(subset(cur, prev)) << to_string(m) << " t=" << t;
                prev = cur;
            }
            ASSERT_EQ(edge_detect(img, m, 0.1), edge_detect(img, m, 0.1));
        }
    }
}

TEST(AreaOpen, Examples) {
    // Sizes 3 and 12.
    const BinaryImage img = parse_mask({
        "###.....",
        "........",
        "...####.",
        "...####.",
        "...####.",
    });
    const BinaryImage out = area_open(img, 5);
    EXPECT_EQ(connected_components(out).component_sizes, (std::vector<std::size_t>{12}));
    EXPECT_FALSE(out.at(0, 0));
    EXPECT_EQ(area_open(img, 0), img);
    EXPECT_EQ(count_foreground(area_open(img, 41)), 0u);
}

TEST(AreaOpen, ConnectivityMatters) {
    const BinaryImage diag = parse_mask({"#..", ".#.", "..#"});
    EXPECT_EQ(area_open(diag, 3, Connectivity::Eight), diag);
    EXPECT_EQ(count_foreground(area_open(diag, 3, Connectivity::Four)), 0u);
}

TEST(Morphology, DilateExamples) {
    BinaryImage dot(5, 5);
    dot.set(2, 2, true);
    EXPECT_EQ(dilate(dot, {SeShape::Line, 3}), parse_mask({".....", ".....", ".###.", ".....", "....."}));
    EXPECT_EQ(count_foreground(dilate(BinaryImage(5, 5), {SeShape::Diamond, 2})), 0u);
    EXPECT_EQ(dilate(dot, {SeShape::Diamond, 1}), parse_mask({".....", "..#..", ".###.", "..#..", "....."}));
    EXPECT_THROW(dilate(dot, {SeShape::Line, 4}), Error);
    EXPECT_THROW(parse_se_shape("disk"), Error);
}

TEST(Morphology, ErodeExamples) {
    const BinaryImage block = parse_mask({".....", ".###.", ".###.", ".###.", "....."});
    BinaryImage center(5, 5);
    center.set(2, 2, true);
    EXPECT_EQ(erode(block, {SeShape::Diamond, 1}), center);

    const BinaryImage full(5, 4, true);
    const BinaryImage eroded = erode(full, {SeShape::Line, 3});
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 5; ++x) EXPECT_EQ(eroded.at(x, y), x >= 1 && x <= 3);
}

TEST(Morphology, DualityAndExtensivity) {
    Rng rng(21);
    for (int i = 0; i < 100; ++i) {
        const BinaryImage img = oracle::random_binary(rng, 10, 9, 0.5);
        for (const StructuringElement se : {StructuringElement{SeShape::Line, 3}, StructuringElement{SeShape::Line, 5},
                                            StructuringElement{SeShape::Diamond, 1}}) {
            ASSERT_TRUE(subset(img, dilate(img, se)));
            const BinaryImage lhs = erode(complement(img), se);
            const BinaryImage rhs = complement(dilate(img, se));
            const int r = se.shape == SeShape::Line ? se.size / 2 : se.size;
            for (int y = r; y < img.height() - r; ++y)
                for (int x = r; x < img.width() - r; ++x) ASSERT_EQ(lhs.at(x, y), rhs.at(x, y));
        }
    }
}

TEST(Morphology, FillHoles) {
    const BinaryImage ring = parse_mask({
        ".......",
        ".#####.",
        ".#...#.",
        ".#...#.",
        ".#...#.",
        ".#####.",
        ".......",
    });
    const BinaryImage solid = parse_mask({
        ".......",
        ".#####.",
        ".#####.",
        ".#####.",
        ".#####.",
        ".#####.",
        ".......",
    });
    EXPECT_EQ(fill_holes(ring), solid);
    EXPECT_EQ(fill_holes(ring), oracle::fill_from_border(ring));

    const BinaryImage open = parse_mask({"#..#", "#..#", "####"});
    EXPECT_EQ(fill_holes(open), open);
    EXPECT_EQ(fill_holes(BinaryImage(4, 4)), BinaryImage(4, 4));

    Rng rng(4);
    for (int i = 0; i < 100; ++i) {
        const BinaryImage img = oracle::random_binary(rng, 12, 12, 0.45);
        ASSERT_EQ(fill_holes(img), oracle::fill_from_border(img));
    }
}

TEST(Morphology, Perimeter) {
    const BinaryImage block = parse_mask({".....", ".###.", ".###.", ".###.", "....."});
    EXPECT_EQ(perimeter(block), parse_mask({".....", ".###.", ".#.#.", ".###.", "....."}));
    BinaryImage dot(3, 3);
    dot.set(1, 1, true);
    EXPECT_EQ(perimeter(dot), dot);

    // Shapes at most two pixels thick are their own perimeter.
    const BinaryImage thin = parse_mask({"##......", "##..#...", "....#...", "..###...", "......##"});
    EXPECT_EQ(perimeter(perimeter(thin)), perimeter(thin));
    EXPECT_EQ(perimeter(thin), thin);
}

TEST(Registry, BuildsSpecsAndValidates) {
    const OperatorSpec edge = make_operator_spec(
        "edge", {{"method", {std::string("sobel"), std::string("log")}}, {"threshold", {0.02, std::int64_t{1}}}});
    EXPECT_EQ(edge.param_names, (std::vector<std::string>{"method", "threshold"}));
    EXPECT_EQ(edge.param_grids[1][1], ParamValue(1.0));
    EXPECT_EQ(edge.input_kind, ImageKind::Gray);
    EXPECT_EQ(edge.output_kind, ImageKind::Binary);

    EXPECT_THROW(make_operator_spec("sharpen", {}), Error);
    EXPECT_THROW(make_operator_spec("medfilt2", {{"size", {std::int64_t{4}}}}), Error);
    EXPECT_THROW(make_operator_spec("medfilt2", {{"size", {}}}), Error);
    EXPECT_THROW(make_operator_spec("medfilt2", {{"size", {std::int64_t{3}}}, {"shape", {std::int64_t{3}}}}), Error);
    EXPECT_THROW(make_operator_spec("medfilt2", {}), Error);
    EXPECT_THROW(make_operator_spec("edge", {{"method", {std::string("roberts")}}, {"threshold", {0.1}}}), Error);
    EXPECT_THROW(make_operator_spec("ordfilt2", {{"size", {std::int64_t{3}, std::int64_t{5}}}, {"order", {std::int64_t{10}}}}),
                 Error);
    EXPECT_THROW(make_operator_spec("bwareaopen", {{"min_size", {std::int64_t{5}}}, {"conn", {std::int64_t{6}}}}), Error);
    EXPECT_THROW(make_operator_spec("medfilt2", {{"size", {std::int64_t{3}, std::int64_t{3}}}}), Error);

    const OperatorSpec perim = make_operator_spec("bwperim", {});
    EXPECT_TRUE(perim.param_names.empty());
}

TEST(Registry, DispatchMatchesDirectCalls) {
    Rng rng(9);
    const GrayImage img = oracle::random_gray(rng, 14, 11);

    const OperatorSpec med = make_operator_spec("medfilt2", {{"size", {std::int64_t{3}, std::int64_t{5}}}});
    const AnyImage out = apply_operator(make_instance(med, {std::int64_t{3}}), img);
    EXPECT_EQ(std::get<GrayImage>(out), median_filter(img, 3));

    const OperatorSpec edge =
        make_operator_spec("edge", {{"method", {std::string("sobel")}}, {"threshold", {0.02, 0.03}}});
    EXPECT_EQ(std::get<BinaryImage>(apply_operator(make_instance(edge, {std::string("sobel"), 0.02}), img)),
              edge_detect(img, EdgeMethod::Sobel, 0.02));

    const OperatorSpec ord = make_operator_spec("ordfilt2", {{"size", {std::int64_t{5}}}});
    EXPECT_EQ(std::get<GrayImage>(apply_operator(make_instance(ord, {std::int64_t{5}}), img)), median_filter(img, 5));

    const BinaryImage bin = oracle::random_binary(rng, 9, 9, 0.5);
    EXPECT_THROW(apply_operator(make_instance(med, {std::int64_t{3}}), bin), Error);
    try {
        apply_operator(make_instance(med, {std::int64_t{3}}), bin);
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), errc::kKind);
    }
    EXPECT_THROW(make_instance(med, {std::int64_t{7}}), Error);

    const OperatorSpec fill = make_operator_spec("imfill", {{"mode", {std::string("holes")}}});
    EXPECT_EQ(std::get<BinaryImage>(apply_operator(make_instance(fill, {std::string("holes")}), bin)), fill_holes(bin));
    const OperatorSpec dil =
        make_operator_spec("imdilate", {{"shape", {std::string("line")}}, {"size", {std::int64_t{3}, std::int64_t{5}}}});
    EXPECT_EQ(std::get<BinaryImage>(apply_operator(make_instance(dil, {std::string("line"), std::int64_t{5}}), bin)),
              dilate(bin, {SeShape::Line, 5}));

    OperatorSpec bogus = med;
    bogus.name = "sharpen";
    EXPECT_THROW(apply_operator(OperatorInstance{&bogus, {std::int64_t{3}}}, img), Error);
}

TEST(Operators, AreaOpenIsIdempotent) {
    Rng rng(31);
    for (int i = 0; i < 100; ++i) {
        const BinaryImage img = oracle::random_binary(rng, 16, 16, 0.35);
        const std::size_t k = uniform_index(rng, 12);
        const Connectivity c = uniform_index(rng, 2) ? Connectivity::Four : Connectivity::Eight;
        const BinaryImage once = area_open(img, k, c);
        ASSERT_EQ(area_open(once, k, c), once);
    }
}

}  // namespace
}  // namespace opsel
