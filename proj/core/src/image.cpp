#include "opsel/image.hpp"

#include <string>

namespace opsel {
namespace {

void check_dims(int width, int height) {
    if (width < 1 || height < 1) {
        throw Error(errc::kDimension, "degenerate dimensions " + std::to_string(width) + "x" +
                                          std::to_string(height));
    }
}

std::size_t area(int width, int height) {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
}

}  // namespace

GrayImage::GrayImage(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
    check_dims(width, height);
    data_.assign(area(width, height), fill);
}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
    check_dims(width, height);
    if (data_.size() != area(width, height)) {
        throw Error(errc::kDimension, "pixel buffer length does not match dimensions");
    }
}

BinaryImage::BinaryImage(int width, int height, bool fill) : width_(width), height_(height) {
    check_dims(width, height);
    data_.assign(area(width, height), fill ? 1 : 0);
}

BinaryImage::BinaryImage(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
    check_dims(width, height);
    if (data_.size() != area(width, height)) {
        throw Error(errc::kDimension, "pixel buffer length does not match dimensions");
    }
    for (auto& v : data_) v = v ? 1 : 0;
}

BinaryImage complement(const BinaryImage& img) {
    BinaryImage out = img;
    for (auto& v : out.pixels()) v = v ? 0 : 1;
    return out;
}

}  // namespace opsel
