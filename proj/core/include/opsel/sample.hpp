#pragma once

#include <string>
#include <vector>

#include "opsel/image.hpp"

namespace opsel {

/// A training image with its ground-truth mask.
struct Sample {
    std::string name;
    GrayImage image;
    BinaryImage reference;
};

using Dataset = std::vector<Sample>;

}  // namespace opsel
