#include "opsel/morphology.hpp"

#include <string>

#include "opsel/components.hpp"

namespace opsel {

SeShape parse_se_shape(std::string_view name) {
    if (name == "line") return SeShape::Line;
    if (name == "diamond") return SeShape::Diamond;
    throw Error(errc::kArgument, "unsupported structuring element '" + std::string(name) + "'");
}

std::string_view to_string(SeShape shape) {
    return shape == SeShape::Line ? "line" : "diamond";
}

std::vector<std::array<int, 2>> StructuringElement::offsets() const {
    std::vector<std::array<int, 2>> out;
    if (shape == SeShape::Line) {
        if (size < 1 || size % 2 == 0) {
            throw Error(errc::kArgument,
                        "unsupported structuring element: line length must be odd, got " +
                            std::to_string(size));
        }
        for (int dx = -size / 2; dx <= size / 2; ++dx) out.push_back({dx, 0});
    } else {
        if (size < 0) {
            throw Error(errc::kArgument, "unsupported structuring element: negative diamond radius");
        }
        for (int dy = -size; dy <= size; ++dy) {
            const int span = size - (dy < 0 ? -dy : dy);
            for (int dx = -span; dx <= span; ++dx) out.push_back({dx, dy});
        }
    }
    return out;
}

BinaryImage area_open(const BinaryImage& img, std::size_t min_size, Connectivity conn) {
    if (min_size == 0) return img;
    const ComponentLabeling cc = connected_components(img, conn);
    BinaryImage out(img.width(), img.height());
    for (std::size_t i = 0; i < img.size(); ++i) {
        const int label = cc.labels[i];
        if (label > 0 && cc.component_sizes[static_cast<std::size_t>(label - 1)] >= min_size) {
            out.pixels()[i] = 1;
        }
    }
    return out;
}

BinaryImage dilate(const BinaryImage& img, const StructuringElement& se) {
    const auto offsets = se.offsets();
    BinaryImage out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            bool hit = false;
            for (const auto& o : offsets) {
                if (img.get_or(x - o[0], y - o[1], false)) {
                    hit = true;
                    break;
                }
            }
            out.set(x, y, hit);
        }
    }
    return out;
}

BinaryImage erode(const BinaryImage& img, const StructuringElement& se) {
    const auto offsets = se.offsets();
    BinaryImage out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            bool all = true;
            for (const auto& o : offsets) {
                if (!img.get_or(x + o[0], y + o[1], false)) {
                    all = false;
                    break;
                }
            }
            out.set(x, y, all);
        }
    }
    return out;
}

BinaryImage fill_holes(const BinaryImage& img) {
    const int w = img.width();
    const int h = img.height();
    // Background reachable from the border stays background.
    std::vector<std::uint8_t> outside(img.size(), 0);
    std::vector<int> stack;
    auto seed = [&](int x, int y) {
        const std::size_t i = static_cast<std::size_t>(y) * w + x;
        if (!img.pixels()[i] && !outside[i]) {
            outside[i] = 1;
            stack.push_back(static_cast<int>(i));
        }
    };
    for (int x = 0; x < w; ++x) {
        seed(x, 0);
        seed(x, h - 1);
    }
    for (int y = 0; y < h; ++y) {
        seed(0, y);
        seed(w - 1, y);
    }
    while (!stack.empty()) {
        const int cur = stack.back();
        stack.pop_back();
        const int cx = cur % w;
        const int cy = cur / w;
        const int nb[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
        for (const auto& d : nb) {
            if (img.contains(cx + d[0], cy + d[1])) seed(cx + d[0], cy + d[1]);
        }
    }
    BinaryImage out(w, h);
    for (std::size_t i = 0; i < img.size(); ++i) out.pixels()[i] = (img.pixels()[i] || !outside[i]) ? 1 : 0;
    return out;
}

BinaryImage perimeter(const BinaryImage& img) {
    BinaryImage out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) out.set(x, y, is_boundary_pixel(img, x, y));
    return out;
}

}  // namespace opsel
