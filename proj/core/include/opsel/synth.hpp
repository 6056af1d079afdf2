#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "opsel/image.hpp"
#include "opsel/sample.hpp"

namespace opsel {

enum class ShapeKind { Circle, Triangle, Rectangle };

struct SynthOptions {
    int count = 20;
    std::uint64_t seed = 1;
    /// Standard deviation of the additive Gaussian noise as a fraction of
    /// the full 0-255 range.
    double noise = 0.1;
    int width = 64;
    int height = 64;
};

/// A generated image: the noisy gray picture, the noiseless filled shape and
/// its intensities.
struct SynthImage {
    ShapeKind shape = ShapeKind::Circle;
    GrayImage image;
    BinaryImage mask;
    std::uint8_t background = 0;
    std::uint8_t foreground = 0;
};

/// One filled circle, triangle or rectangle per image; deterministic in
/// options.seed.
std::vector<SynthImage> generate_shapes(const SynthOptions& options);

/// Samples whose references are the perimeters of the noiseless shapes.
Dataset generate_dataset(const SynthOptions& options);

/// Writes img_NNN.pgm and img_NNN<suffix>.pgm for every sample; creates the
/// directory if needed. Returns the written paths.
std::vector<std::filesystem::path> write_dataset(const Dataset& dataset, const std::filesystem::path& dir,
                                                 const std::string& suffix = "_gt");

}  // namespace opsel
