#pragma once

#include <string>
#include <string_view>

#include "opsel/image.hpp"

namespace opsel {

enum class EdgeMethod { Sobel, Prewitt, Log, ZeroCross, Canny };

EdgeMethod parse_edge_method(std::string_view name);
std::string_view to_string(EdgeMethod method);

/// Edge map of a grayscale image. `threshold` is relative to the strongest
/// response in the image:
///  - sobel/prewitt: gradient magnitude / max magnitude > threshold.
///  - log/zerocross: sign changes of a Laplacian-of-Gaussian response
///    (sigma 2, 13x13) whose jump exceeds threshold * max |response|.
///  - canny: Gaussian smoothing, non-maximum suppression, then hysteresis
///    with high = threshold and low = 0.4 * threshold.
/// Neighborhoods replicate the border pixels.
BinaryImage edge_detect(const GrayImage& img, EdgeMethod method, double threshold);

}  // namespace opsel
