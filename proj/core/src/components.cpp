#include "opsel/components.hpp"

#include <algorithm>
#include <array>

namespace opsel {
namespace {

constexpr std::array<std::array<int, 2>, 8> kNeighbors{{
    {1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};

}  // namespace

ComponentLabeling connected_components(const BinaryImage& img, Connectivity conn) {
    ComponentLabeling out;
    out.width = img.width();
    out.height = img.height();
    out.labels.assign(img.size(), 0);
    const int w = img.width();
    const int h = img.height();
    const std::size_t neighbor_count = conn == Connectivity::Four ? 4 : 8;

    std::vector<int> stack;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t idx = static_cast<std::size_t>(y) * w + x;
            if (!img.pixels()[idx] || out.labels[idx] != 0) continue;
            const int label = ++out.component_count;
            std::size_t size = 0;
            out.labels[idx] = label;
            stack.push_back(static_cast<int>(idx));
            while (!stack.empty()) {
                const int cur = stack.back();
                stack.pop_back();
                ++size;
                const int cx = cur % w;
                const int cy = cur / w;
                for (std::size_t k = 0; k < neighbor_count; ++k) {
                    const int nx = cx + kNeighbors[k][0];
                    const int ny = cy + kNeighbors[k][1];
                    if (!img.contains(nx, ny)) continue;
                    const std::size_t nidx = static_cast<std::size_t>(ny) * w + nx;
                    if (img.pixels()[nidx] && out.labels[nidx] == 0) {
                        out.labels[nidx] = label;
                        stack.push_back(static_cast<int>(nidx));
                    }
                }
            }
            out.component_sizes.push_back(size);
        }
    }
    return out;
}

bool is_boundary_pixel(const BinaryImage& img, int x, int y) {
    if (!img.at(x, y)) return false;
    return !img.get_or(x - 1, y, false) || !img.get_or(x + 1, y, false) ||
           !img.get_or(x, y - 1, false) || !img.get_or(x, y + 1, false);
}

std::vector<std::size_t> contour_lengths(const BinaryImage& img, Connectivity conn) {
    const ComponentLabeling cc = connected_components(img, conn);
    std::vector<std::size_t> lengths(static_cast<std::size_t>(cc.component_count), 0);
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            if (is_boundary_pixel(img, x, y)) ++lengths[static_cast<std::size_t>(cc.label_at(x, y) - 1)];
        }
    }
    return lengths;
}

std::size_t count_foreground(const BinaryImage& img) {
    return static_cast<std::size_t>(std::count_if(img.pixels().begin(), img.pixels().end(),
                                                  [](std::uint8_t v) { return v != 0; }));
}

}  // namespace opsel
