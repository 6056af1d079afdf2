#pragma once

#include <filesystem>

#include "opsel/image.hpp"

namespace opsel {

// Netpbm raster I/O. Reading accepts P1-P6 (PBM/PGM/PPM, ASCII or binary,
// maxval up to 65535); color is converted to luminance. Writing always emits
// binary 8-bit PGM (P5).

GrayImage load_gray(const std::filesystem::path& path);

/// Loads a raster as a binary mask; intensities >= 128 are foreground.
BinaryImage load_binary(const std::filesystem::path& path);

void save_gray(const GrayImage& img, const std::filesystem::path& path);

/// Foreground is written as 255, background as 0.
void save_binary(const BinaryImage& img, const std::filesystem::path& path);

/// True for file extensions the loader recognizes (.pgm, .pbm, .ppm, .pnm).
bool is_raster_path(const std::filesystem::path& path);

}  // namespace opsel
