#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "opsel/error.hpp"

namespace opsel {

enum class Connectivity { Four, Eight };

/// 8-bit grayscale raster, row-major.
class GrayImage {
public:
    GrayImage() = default;
    GrayImage(int width, int height, std::uint8_t fill = 0);
    GrayImage(int width, int height, std::vector<std::uint8_t> data);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    std::uint8_t at(int x, int y) const { return data_[index(x, y)]; }
    std::uint8_t& at(int x, int y) { return data_[index(x, y)]; }

    std::span<const std::uint8_t> pixels() const noexcept { return data_; }
    std::span<std::uint8_t> pixels() noexcept { return data_; }

    bool contains(int x, int y) const noexcept {
        return x >= 0 && y >= 0 && x < width_ && y < height_;
    }

    friend bool operator==(const GrayImage&, const GrayImage&) = default;

private:
    std::size_t index(int x, int y) const noexcept {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> data_;
};

/// Boolean raster, row-major; true is foreground. Stored one byte per
/// pixel (0 or 1).
class BinaryImage {
public:
    BinaryImage() = default;
    BinaryImage(int width, int height, bool fill = false);
    BinaryImage(int width, int height, std::vector<std::uint8_t> data);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return data_.size(); }

    bool at(int x, int y) const { return data_[index(x, y)] != 0; }
    void set(int x, int y, bool v) { data_[index(x, y)] = v ? 1 : 0; }

    /// Out-of-bounds reads return `outside`.
    bool get_or(int x, int y, bool outside) const noexcept {
        return contains(x, y) ? data_[index(x, y)] != 0 : outside;
    }

    std::span<const std::uint8_t> pixels() const noexcept { return data_; }
    std::span<std::uint8_t> pixels() noexcept { return data_; }

    bool contains(int x, int y) const noexcept {
        return x >= 0 && y >= 0 && x < width_ && y < height_;
    }

    bool same_shape(const BinaryImage& o) const noexcept {
        return width_ == o.width_ && height_ == o.height_;
    }

    friend bool operator==(const BinaryImage&, const BinaryImage&) = default;

private:
    std::size_t index(int x, int y) const noexcept {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> data_;
};

BinaryImage complement(const BinaryImage& img);

}  // namespace opsel
