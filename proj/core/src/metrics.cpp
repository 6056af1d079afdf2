#include "opsel/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace opsel {
namespace {

struct Counts {
    std::size_t result = 0;
    std::size_t reference = 0;
    std::size_t both = 0;
    std::size_t total = 0;
};

Counts count(const BinaryImage& result, const BinaryImage& reference) {
    if (!result.same_shape(reference)) {
        throw Error(errc::kDimension, "result " + std::to_string(result.width()) + "x" +
                                          std::to_string(result.height()) + " vs reference " +
                                          std::to_string(reference.width()) + "x" +
                                          std::to_string(reference.height()));
    }
    Counts c;
    c.total = result.size();
    const auto r = result.pixels();
    const auto g = reference.pixels();
    for (std::size_t i = 0; i < c.total; ++i) {
        c.result += r[i];
        c.reference += g[i];
        c.both += r[i] & g[i];
    }
    return c;
}

double d1(const Counts& c) {
    const std::size_t denom = c.total - c.reference;
    return denom == 0 ? 0.0 : static_cast<double>(c.result - c.both) / static_cast<double>(denom);
}

double d2(const Counts& c) {
    return c.reference == 0 ? 0.0
                            : static_cast<double>(c.reference - c.both) / static_cast<double>(c.reference);
}

double d3(const Counts& c) {
    const std::size_t sym = (c.result - c.both) + (c.reference - c.both);
    return static_cast<double>(sym) / static_cast<double>(std::max<std::size_t>(c.result, 1));
}

}  // namespace

void ErrorWeights::validate() const {
    const bool finite = std::isfinite(w1) && std::isfinite(w2) && std::isfinite(w3);
    if (!finite || w1 < 0 || w2 < 0 || w3 < 0 || w1 + w2 + w3 <= 0) {
        throw Error(errc::kConfig, "error weights must be non-negative with a positive sum");
    }
}

void RewardThresholds::validate() const {
    if (!(eps_quality > 0) || !std::isfinite(delta) || delta < 0) {
        throw Error(errc::kConfig, "eps_quality must be > 0 and delta >= 0");
    }
}

double over_detection_error(const BinaryImage& result, const BinaryImage& reference) {
    return d1(count(result, reference));
}

double under_detection_error(const BinaryImage& result, const BinaryImage& reference) {
    return d2(count(result, reference));
}

double localization_error(const BinaryImage& result, const BinaryImage& reference) {
    return d3(count(result, reference));
}

ErrorBreakdown evaluate(const BinaryImage& result, const BinaryImage& reference, const ErrorWeights& w) {
    const Counts c = count(result, reference);
    ErrorBreakdown e{d1(c), d2(c), d3(c), 0.0};
    e.total = w.w1 * e.d1 + w.w2 * e.d2 + w.w3 * e.d3;
    return e;
}

double quality(const BinaryImage& result, const BinaryImage& reference, const ErrorWeights& w) {
    return evaluate(result, reference, w).total;
}

Reward reward(double d, const RewardThresholds& t) {
    if (!std::isfinite(d)) throw Error(errc::kArgument, "quality value is not finite");
    if (d < t.eps_quality) return {kRewardHit, true};
    if (d < t.eps_quality + t.delta) return {kRewardNeutral, false};
    return {kRewardMiss, false};
}

}  // namespace opsel
