#pragma once

#include "opsel/image.hpp"

namespace opsel {

// Supervised edge-map evaluation against a reference (ground-truth) mask.
// Every function throws E_DIM when the two images differ in shape.

struct ErrorWeights {
    double w1 = 1.0 / 3.0;
    double w2 = 1.0 / 3.0;
    double w3 = 1.0 / 3.0;

    /// Throws E_CONFIG unless all weights are non-negative with a positive sum.
    void validate() const;

    friend bool operator==(const ErrorWeights&, const ErrorWeights&) = default;
};

struct RewardThresholds {
    double eps_quality = 0.1;
    double delta = 0.1;

    void validate() const;

    friend bool operator==(const RewardThresholds&, const RewardThresholds&) = default;
};

/// False positives over the non-reference pixels:
///   (|R| - |R & G|) / (N - |G|), 0 when every pixel is reference.
double over_detection_error(const BinaryImage& result, const BinaryImage& reference);

/// Missed reference pixels over |G|; 0 for an empty reference.
double under_detection_error(const BinaryImage& result, const BinaryImage& reference);

/// |R xor G| / max(|R|, 1). Not bounded above.
double localization_error(const BinaryImage& result, const BinaryImage& reference);

struct ErrorBreakdown {
    double d1 = 0.0;
    double d2 = 0.0;
    double d3 = 0.0;
    double total = 0.0;
};

/// All three errors plus the weighted total in one pass over the pixels.
ErrorBreakdown evaluate(const BinaryImage& result, const BinaryImage& reference, const ErrorWeights& w);

/// w1*D1 + w2*D2 + w3*D3; lower is better.
double quality(const BinaryImage& result, const BinaryImage& reference, const ErrorWeights& w);

inline constexpr int kRewardHit = 10;
inline constexpr int kRewardNeutral = 0;
inline constexpr int kRewardMiss = -10;

struct Reward {
    int value = 0;
    bool terminal = false;

    friend bool operator==(const Reward&, const Reward&) = default;
};

/// +10 (terminal) below eps_quality, 0 inside [eps_quality, eps_quality + delta),
/// -10 otherwise. Throws E_ARG for non-finite D.
Reward reward(double d, const RewardThresholds& t);

}  // namespace opsel
