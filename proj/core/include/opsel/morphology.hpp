#pragma once

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "opsel/image.hpp"

namespace opsel {

enum class SeShape { Line, Diamond };

SeShape parse_se_shape(std::string_view name);
std::string_view to_string(SeShape shape);

/// Flat structuring element centered on its origin. A line is horizontal
/// with odd `size` pixels; a diamond has radius `size` (city-block ball).
struct StructuringElement {
    SeShape shape = SeShape::Line;
    int size = 3;

    /// Throws E_ARG for even/non-positive line lengths or negative radii.
    std::vector<std::array<int, 2>> offsets() const;
};

/// Removes components with fewer than `min_size` pixels.
BinaryImage area_open(const BinaryImage& img, std::size_t min_size,
                      Connectivity conn = Connectivity::Eight);

BinaryImage dilate(const BinaryImage& img, const StructuringElement& se);

/// Out-of-bounds pixels count as background, so the result is false
/// wherever the element does not fit inside the image.
BinaryImage erode(const BinaryImage& img, const StructuringElement& se);

/// Sets background regions that are not 4-connected to the image border.
BinaryImage fill_holes(const BinaryImage& img);

/// Keeps foreground pixels with a background or out-of-bounds 4-neighbor.
BinaryImage perimeter(const BinaryImage& img);

}  // namespace opsel
