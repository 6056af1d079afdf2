#pragma once

#include <cstddef>
#include <vector>

#include "opsel/image.hpp"

namespace opsel {

struct ComponentLabeling {
    int width = 0;
    int height = 0;
    /// Row-major; 0 is background, components are numbered 1..component_count
    /// in raster order of their first pixel.
    std::vector<int> labels;
    int component_count = 0;
    /// component_sizes[k] is the pixel count of label k+1.
    std::vector<std::size_t> component_sizes;

    int label_at(int x, int y) const { return labels[static_cast<std::size_t>(y) * width + x]; }
};

ComponentLabeling connected_components(const BinaryImage& img,
                                       Connectivity conn = Connectivity::Eight);

/// Boundary pixel count per component (foreground pixels with a background
/// or out-of-bounds 4-neighbor), indexed like component_sizes.
std::vector<std::size_t> contour_lengths(const BinaryImage& img,
                                         Connectivity conn = Connectivity::Eight);

std::size_t count_foreground(const BinaryImage& img);

/// True when (x, y) is foreground and touches background or the image edge
/// through one of its 4-neighbors.
bool is_boundary_pixel(const BinaryImage& img, int x, int y);

}  // namespace opsel
