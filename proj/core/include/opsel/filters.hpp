#pragma once

#include "opsel/image.hpp"

namespace opsel {

// Neighborhood filters over a square size x size window. Pixels outside the
// image read as 0.

GrayImage median_filter(const GrayImage& img, int size);

/// `order` is a 1-based rank into the sorted window: 1 is the minimum,
/// size*size the maximum.
GrayImage order_filter(const GrayImage& img, int size, int order);

/// Rank used by order_filter when only a window size is configured.
int median_rank(int size);

/// Pixelwise adaptive Wiener filter. With local mean m and variance v, and
/// the noise estimate n taken as the mean of all local variances:
///   out = m + max(v - n, 0) / max(v, 1e-9) * (x - m), clamped to [0, 255].
GrayImage wiener_filter(const GrayImage& img, int size);

}  // namespace opsel
