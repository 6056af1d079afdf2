#include "opsel/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "opsel/image_io.hpp"
#include "opsel/morphology.hpp"
#include "opsel/random.hpp"

namespace opsel {
namespace {

int uniform_int(Rng& rng, int lo, int hi) {
    return lo + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

double cross(double ax, double ay, double bx, double by, double px, double py) {
    return (bx - ax) * (py - ay) - (by - ay) * (px - ax);
}

BinaryImage draw(ShapeKind kind, int w, int h, Rng& rng) {
    BinaryImage mask(w, h);
    const int extent = std::min(w, h);
    const int margin = std::max(2, extent / 10);
    const double cx = uniform_int(rng, extent / 3, w - 1 - extent / 3);
    const double cy = uniform_int(rng, extent / 3, h - 1 - extent / 3);
    const double max_r = std::min({cx - margin, cy - margin, w - 1 - margin - cx, h - 1 - margin - cy});
    const double r = std::max(3.0, max_r * (0.6 + 0.4 * uniform01(rng)));

    switch (kind) {
        case ShapeKind::Circle:
            for (int y = 0; y < h; ++y)
                for (int x = 0; x < w; ++x)
                    mask.set(x, y, (x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r);
            break;
        case ShapeKind::Rectangle: {
            const double hw = r * (0.6 + 0.4 * uniform01(rng));
            const double hh = r * (0.6 + 0.4 * uniform01(rng));
            for (int y = 0; y < h; ++y)
                for (int x = 0; x < w; ++x) mask.set(x, y, std::abs(x - cx) <= hw && std::abs(y - cy) <= hh);
            break;
        }
        case ShapeKind::Triangle: {
            const double rot = uniform01(rng) * 2.0 * std::numbers::pi;
            double vx[3];
            double vy[3];
            for (int k = 0; k < 3; ++k) {
                const double a = rot + k * 2.0 * std::numbers::pi / 3.0;
                vx[k] = cx + r * std::cos(a);
                vy[k] = cy + r * std::sin(a);
            }
            for (int y = 0; y < h; ++y)
                for (int x = 0; x < w; ++x) {
                    const double c0 = cross(vx[0], vy[0], vx[1], vy[1], x, y);
                    const double c1 = cross(vx[1], vy[1], vx[2], vy[2], x, y);
                    const double c2 = cross(vx[2], vy[2], vx[0], vy[0], x, y);
                    mask.set(x, y, (c0 >= 0 && c1 >= 0 && c2 >= 0) || (c0 <= 0 && c1 <= 0 && c2 <= 0));
                }
            break;
        }
    }
    return mask;
}

}  // namespace

std::vector<SynthImage> generate_shapes(const SynthOptions& options) {
    if (options.count < 0) throw Error(errc::kArgument, "count must be non-negative");
    if (options.width < 16 || options.height < 16) throw Error(errc::kArgument, "images must be at least 16x16");
    if (!(options.noise >= 0.0) || !std::isfinite(options.noise)) {
        throw Error(errc::kArgument, "noise level must be finite and non-negative");
    }
    Rng rng(options.seed);
    std::vector<SynthImage> out;
    for (int i = 0; i < options.count; ++i) {
        SynthImage s;
        s.shape = static_cast<ShapeKind>(i % 3);
        s.mask = draw(s.shape, options.width, options.height, rng);
        // Contrast of at least 80 gray levels, either polarity.
        const int bg = uniform_int(rng, 20, 235);
        int fg = uniform_int(rng, 20, 235);
        while (std::abs(fg - bg) < 80) fg = uniform_int(rng, 20, 235);
        s.background = static_cast<std::uint8_t>(bg);
        s.foreground = static_cast<std::uint8_t>(fg);
        s.image = GrayImage(options.width, options.height);
        for (int y = 0; y < options.height; ++y) {
            for (int x = 0; x < options.width; ++x) {
                double v = s.mask.at(x, y) ? fg : bg;
                if (options.noise > 0.0) v += options.noise * 255.0 * standard_normal(rng);
                s.image.at(x, y) = static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
            }
        }
        out.push_back(std::move(s));
    }
    return out;
}

Dataset generate_dataset(const SynthOptions& options) {
    Dataset out;
    int i = 0;
    for (auto& s : generate_shapes(options)) {
        char name[32];
        std::snprintf(name, sizeof name, "img_%03d.pgm", i++);
        out.push_back({name, std::move(s.image), perimeter(s.mask)});
    }
    return out;
}

std::vector<std::filesystem::path> write_dataset(const Dataset& dataset, const std::filesystem::path& dir,
                                                 const std::string& suffix) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) throw Error(errc::kIo, "cannot create directory " + dir.string());
    std::vector<std::filesystem::path> written;
    for (const auto& s : dataset) {
        const std::filesystem::path image = dir / s.name;
        const std::filesystem::path ref = dir / (image.stem().string() + suffix + image.extension().string());
        save_gray(s.image, image);
        save_binary(s.reference, ref);
        written.push_back(image);
        written.push_back(ref);
    }
    return written;
}

}  // namespace opsel
