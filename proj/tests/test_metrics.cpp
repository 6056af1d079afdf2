#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "opsel/components.hpp"
#include "opsel/metrics.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace opsel {
namespace {

using testing::parse_mask;

const ErrorWeights kEqual{};

BinaryImage first_n(int w, int h, int n) {
    BinaryImage img(w, h);
    for (int i = 0; i < n; ++i) img.set(i % w, i / w, true);
    return img;
}

TEST(OverDetection, Examples) {
    const BinaryImage ref = first_n(5, 5, 5);
    EXPECT_EQ(over_detection_error(ref, ref), 0.0);
    EXPECT_DOUBLE_EQ(over_detection_error(BinaryImage(5, 5, true), ref), 1.0);
    EXPECT_EQ(over_detection_error(BinaryImage(5, 5), ref), 0.0);
    // Reference covers everything: denominator is zero.
    EXPECT_EQ(over_detection_error(BinaryImage(2, 2, true), BinaryImage(2, 2, true)), 0.0);
}

TEST(UnderDetection, Examples) {
    const BinaryImage ref = first_n(5, 5, 10);
    EXPECT_EQ(under_detection_error(BinaryImage(5, 5, true), ref), 0.0);
    EXPECT_DOUBLE_EQ(under_detection_error(first_n(5, 5, 6), ref), 0.4);
    EXPECT_DOUBLE_EQ(under_detection_error(BinaryImage(5, 5), ref), 1.0);
    EXPECT_EQ(under_detection_error(BinaryImage(5, 5, true), BinaryImage(5, 5)), 0.0);
}

TEST(Localization, Examples) {
    const BinaryImage ref = first_n(5, 5, 8);
    EXPECT_EQ(localization_error(ref, ref), 0.0);

    // Result: pixels 2..9, overlap 6 with the reference's 0..7.
    BinaryImage shifted(5, 5);
    for (int i = 2; i < 10; ++i) shifted.set(i % 5, i / 5, true);
    EXPECT_DOUBLE_EQ(localization_error(shifted, ref), 0.5);

    EXPECT_DOUBLE_EQ(localization_error(BinaryImage(5, 5), first_n(5, 5, 4)), 4.0);
}

TEST(Quality, Examples) {
    const BinaryImage ref = parse_mask({"##..", "#...", "...#"});
    const BinaryImage res = parse_mask({"#..#", "#...", "..##"});
    EXPECT_EQ(quality(ref, ref, {0.2, 0.5, 0.3}), 0.0);
    EXPECT_EQ(quality(res, ref, {1, 0, 0}), over_detection_error(res, ref));
    EXPECT_EQ(quality(res, ref, {0, 1, 0}), under_detection_error(res, ref));
    EXPECT_EQ(quality(res, ref, {0, 0, 1}), localization_error(res, ref));

    // D1 = 0.1, D2 = 0.4, D3 = 0.5 under equal weights.
    EXPECT_NEAR((0.1 + 0.4 + 0.5) / 3.0, 1.0 / 3.0, 1e-15);
    // Reference 10 of 40 pixels; result keeps 6 of them and adds 3 others:
    // D1 = 3/30, D2 = 4/10, D3 = (3 + 4)/9.
    BinaryImage big_ref(8, 5);
    BinaryImage big_res(8, 5);
    for (int i = 0; i < 10; ++i) big_ref.set(i % 8, i / 8, true);
    for (int i = 0; i < 6; ++i) big_res.set(i % 8, i / 8, true);
    for (int i = 20; i < 23; ++i) big_res.set(i % 8, i / 8, true);
    const ErrorBreakdown b = evaluate(big_res, big_ref, kEqual);
    EXPECT_DOUBLE_EQ(b.d1, 0.1);
    EXPECT_DOUBLE_EQ(b.d2, 0.4);
    EXPECT_DOUBLE_EQ(b.d3, 7.0 / 9.0);
    EXPECT_NEAR(b.total, (0.1 + 0.4 + 7.0 / 9.0) / 3.0, 1e-12);
}

TEST(Metrics, DimensionMismatch) {
    const BinaryImage a(3, 3);
    const BinaryImage b(3, 4);
    EXPECT_THROW(over_detection_error(a, b), Error);
    EXPECT_THROW(under_detection_error(a, b), Error);
    EXPECT_THROW(localization_error(a, b), Error);
    EXPECT_THROW(quality(a, b, kEqual), Error);
}

TEST(Metrics, Validation) {
    EXPECT_NO_THROW(kEqual.validate());
    EXPECT_THROW((ErrorWeights{0, 0, 0}.validate()), Error);
    EXPECT_THROW((ErrorWeights{-0.1, 0.5, 0.6}.validate()), Error);
    EXPECT_NO_THROW((RewardThresholds{0.2, 0.0}.validate()));
    EXPECT_THROW((RewardThresholds{0.0, 0.1}.validate()), Error);
    EXPECT_THROW((RewardThresholds{0.1, -0.1}.validate()), Error);
}

TEST(Metrics, ExhaustiveSmallImagesMatchPixelSetOracle) {
    // Every pair of 2x2 images.
    for (int a = 0; a < 16; ++a)
        for (int b = 0; b < 16; ++b) {
            BinaryImage r(2, 2);
            BinaryImage g(2, 2);
            for (int k = 0; k < 4; ++k) {
                r.set(k % 2, k / 2, (a >> k) & 1);
                g.set(k % 2, k / 2, (b >> k) & 1);
            }
            const ErrorBreakdown e = evaluate(r, g, kEqual);
            ASSERT_DOUBLE_EQ(e.d1, oracle::d1(r, g));
            ASSERT_DOUBLE_EQ(e.d2, oracle::d2(r, g));
            ASSERT_DOUBLE_EQ(e.d3, oracle::d3(r, g));
        }
}

TEST(Metrics, RandomPairsUpTo4x4MatchPixelSetOracle) {
    Rng rng(42);
    for (int i = 0; i < 10000; ++i) {
        const int w = 1 + static_cast<int>(uniform_index(rng, 4));
        const int h = 1 + static_cast<int>(uniform_index(rng, 4));
        const BinaryImage r = oracle::random_binary(rng, w, h, uniform01(rng));
        const BinaryImage g = oracle::random_binary(rng, w, h, uniform01(rng));
        const ErrorWeights wts{uniform01(rng), uniform01(rng), uniform01(rng) + 0.01};
        const ErrorBreakdown e = evaluate(r, g, wts);
        ASSERT_DOUBLE_EQ(e.d1, oracle::d1(r, g));
        ASSERT_DOUBLE_EQ(e.d2, oracle::d2(r, g));
        ASSERT_DOUBLE_EQ(e.d3, oracle::d3(r, g));
        ASSERT_GE(e.d1, 0.0);
        ASSERT_LE(e.d1, 1.0);
        ASSERT_GE(e.d2, 0.0);
        ASSERT_LE(e.d2, 1.0);
        ASSERT_NEAR(e.total, wts.w1 * e.d1 + wts.w2 * e.d2 + wts.w3 * e.d3, 1e-12);
        ASSERT_NEAR(quality(r, g, {2 * wts.w1, 2 * wts.w2, 2 * wts.w3}), 2 * quality(r, g, wts), 1e-12);
        if (count_foreground(g) > 0) {
            const ErrorBreakdown self = evaluate(g, g, wts);
            ASSERT_EQ(self.total, 0.0);
        }
    }
}

TEST(Reward, Branches) {
    const RewardThresholds t{0.1, 0.1};
    EXPECT_EQ(reward(0.05, t), (Reward{10, true}));
    EXPECT_EQ(reward(0.15, t), (Reward{0, false}));
    EXPECT_EQ(reward(0.9, t), (Reward{-10, false}));
}

TEST(Reward, StepFunctionWithTwoBreakpoints) {
    const RewardThresholds t{0.25, 0.05};
    EXPECT_EQ(reward(std::nextafter(0.25, 0.0), t).value, 10);
    EXPECT_EQ(reward(0.25, t).value, 0);
    EXPECT_EQ(reward(std::nextafter(0.3, 0.0), t).value, 0);
    EXPECT_EQ(reward(0.3, t).value, -10);
    EXPECT_EQ(reward(0.0, t).value, 10);
    EXPECT_EQ(reward(1e9, t).value, -10);

    // delta = 0 collapses the neutral band.
    EXPECT_EQ(reward(0.1, {0.1, 0.0}).value, -10);

    int changes = 0;
    int prev = reward(0.0, t).value;
    for (int i = 1; i <= 1000; ++i) {
        const int cur = reward(i * 0.001, t).value;
        changes += cur != prev;
        prev = cur;
    }
    EXPECT_EQ(changes, 2);
}

TEST(Reward, RejectsNonFinite) {
    const RewardThresholds t{};
    EXPECT_THROW(reward(std::numeric_limits<double>::quiet_NaN(), t), Error);
    EXPECT_THROW(reward(std::numeric_limits<double>::infinity(), t), Error);
}

}  // namespace
}  // namespace opsel
