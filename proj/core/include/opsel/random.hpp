#pragma once

#include <cstdint>
#include <random>

namespace opsel {

// mt19937_64 has a fully specified output sequence; the helpers below avoid
// the implementation-defined std distributions so that seeded runs produce
// the same numbers with every standard library.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n), n >= 1; rejection sampling, no modulo bias.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = rng();
    while (x >= limit) x = rng();
    return x % n;
}

/// Gaussian via Box-Muller on uniform01.
double standard_normal(Rng& rng);

}  // namespace opsel
