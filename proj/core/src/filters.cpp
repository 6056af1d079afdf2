#include "opsel/filters.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace opsel {
namespace {

void check_window(int size) {
    if (size < 1 || size % 2 == 0) {
        throw Error(errc::kArgument, "filter size must be a positive odd integer, got " +
                                         std::to_string(size));
    }
}

// Collects the zero-padded window around (x, y) into `buf`.
void gather(const GrayImage& img, int x, int y, int radius, std::vector<std::uint8_t>& buf) {
    buf.clear();
    for (int dy = -radius; dy <= radius; ++dy) {
        for (int dx = -radius; dx <= radius; ++dx) {
            const int nx = x + dx;
            const int ny = y + dy;
            buf.push_back(img.contains(nx, ny) ? img.at(nx, ny) : 0);
        }
    }
}

}  // namespace

int median_rank(int size) {
    return (size * size + 1) / 2;
}

GrayImage order_filter(const GrayImage& img, int size, int order) {
    check_window(size);
    if (order < 1 || order > size * size) {
        throw Error(errc::kArgument, "order " + std::to_string(order) + " outside [1, " +
                                         std::to_string(size * size) + "]");
    }
    const int radius = size / 2;
    GrayImage out(img.width(), img.height());
    std::vector<std::uint8_t> buf;
    buf.reserve(static_cast<std::size_t>(size * size));
    const auto rank = static_cast<std::ptrdiff_t>(order - 1);
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            gather(img, x, y, radius, buf);
            std::nth_element(buf.begin(), buf.begin() + rank, buf.end());
            out.at(x, y) = buf[static_cast<std::size_t>(rank)];
        }
    }
    return out;
}

GrayImage median_filter(const GrayImage& img, int size) {
    check_window(size);
    return order_filter(img, size, median_rank(size));
}

GrayImage wiener_filter(const GrayImage& img, int size) {
    check_window(size);
    const int radius = size / 2;
    const int w = img.width();
    const int h = img.height();
    const double window = static_cast<double>(size) * size;
    std::vector<double> mean(img.size());
    std::vector<double> var(img.size());

    double noise = 0.0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double sum = 0.0;
            double sum_sq = 0.0;
            for (int dy = -radius; dy <= radius; ++dy) {
                for (int dx = -radius; dx <= radius; ++dx) {
                    if (!img.contains(x + dx, y + dy)) continue;
                    const double v = img.at(x + dx, y + dy);
                    sum += v;
                    sum_sq += v * v;
                }
            }
            const std::size_t i = static_cast<std::size_t>(y) * w + x;
            mean[i] = sum / window;
            var[i] = std::max(sum_sq / window - mean[i] * mean[i], 0.0);
            noise += var[i];
        }
    }
    noise /= static_cast<double>(img.size());

    GrayImage out(w, h);
    for (std::size_t i = 0; i < img.size(); ++i) {
        const double gain = std::max(var[i] - noise, 0.0) / std::max(var[i], 1e-9);
        const double v = mean[i] + gain * (img.pixels()[i] - mean[i]);
        out.pixels()[i] = static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
    }
    return out;
}

}  // namespace opsel
