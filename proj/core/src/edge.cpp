#include "opsel/edge.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace opsel {
namespace {

constexpr double kLogSigma = 2.0;
constexpr int kLogWidth = 13;
constexpr double kCannySigma = std::numbers::sqrt2;
constexpr double kCannyLowRatio = 0.4;

// Dense float image used for intermediate responses.
struct Field {
    int w = 0;
    int h = 0;
    std::vector<double> v;

    Field(int width, int height) : w(width), h(height), v(static_cast<std::size_t>(width) * height, 0.0) {}

    double& operator()(int x, int y) { return v[static_cast<std::size_t>(y) * w + x]; }
    double operator()(int x, int y) const { return v[static_cast<std::size_t>(y) * w + x]; }

    double clamped(int x, int y) const {
        return (*this)(std::clamp(x, 0, w - 1), std::clamp(y, 0, h - 1));
    }
};

Field to_field(const GrayImage& img) {
    Field f(img.width(), img.height());
    for (std::size_t i = 0; i < img.size(); ++i) f.v[i] = img.pixels()[i];
    return f;
}

// Correlation with a square kernel of odd width, replicate padding.
Field correlate(const Field& in, const std::vector<double>& kernel, int width) {
    const int r = width / 2;
    Field out(in.w, in.h);
    for (int y = 0; y < in.h; ++y) {
        for (int x = 0; x < in.w; ++x) {
            double acc = 0.0;
            for (int ky = -r; ky <= r; ++ky) {
                for (int kx = -r; kx <= r; ++kx) {
                    acc += kernel[static_cast<std::size_t>((ky + r) * width + (kx + r))] *
                           in.clamped(x + kx, y + ky);
                }
            }
            out(x, y) = acc;
        }
    }
    return out;
}

// Separable Gaussian blur, replicate padding.
Field gaussian_blur(const Field& in, double sigma) {
    const int r = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> k(static_cast<std::size_t>(2 * r + 1));
    double sum = 0.0;
    for (int i = -r; i <= r; ++i) {
        k[static_cast<std::size_t>(i + r)] = std::exp(-(i * i) / (2.0 * sigma * sigma));
        sum += k[static_cast<std::size_t>(i + r)];
    }
    for (auto& x : k) x /= sum;

    Field tmp(in.w, in.h);
    for (int y = 0; y < in.h; ++y)
        for (int x = 0; x < in.w; ++x) {
            double acc = 0.0;
            for (int i = -r; i <= r; ++i) acc += k[static_cast<std::size_t>(i + r)] * in.clamped(x + i, y);
            tmp(x, y) = acc;
        }
    Field out(in.w, in.h);
    for (int y = 0; y < in.h; ++y)
        for (int x = 0; x < in.w; ++x) {
            double acc = 0.0;
            for (int i = -r; i <= r; ++i) acc += k[static_cast<std::size_t>(i + r)] * tmp.clamped(x, y + i);
            out(x, y) = acc;
        }
    return out;
}

struct Gradient {
    Field gx;
    Field gy;
    Field mag;
};

// 3x3 derivative pair with center weight `center` (2 = Sobel, 1 = Prewitt).
Gradient gradient(const Field& in, double center) {
    Gradient g{Field(in.w, in.h), Field(in.w, in.h), Field(in.w, in.h)};
    for (int y = 0; y < in.h; ++y) {
        for (int x = 0; x < in.w; ++x) {
            const double gx = (in.clamped(x + 1, y - 1) + center * in.clamped(x + 1, y) + in.clamped(x + 1, y + 1)) -
                              (in.clamped(x - 1, y - 1) + center * in.clamped(x - 1, y) + in.clamped(x - 1, y + 1));
            const double gy = (in.clamped(x - 1, y + 1) + center * in.clamped(x, y + 1) + in.clamped(x + 1, y + 1)) -
                              (in.clamped(x - 1, y - 1) + center * in.clamped(x, y - 1) + in.clamped(x + 1, y - 1));
            g.gx(x, y) = gx;
            g.gy(x, y) = gy;
            g.mag(x, y) = std::hypot(gx, gy);
        }
    }
    return g;
}

double max_of(const Field& f) {
    double m = 0.0;
    for (double v : f.v) m = std::max(m, std::abs(v));
    return m;
}

BinaryImage threshold_gradient(const GrayImage& img, double center, double threshold) {
    const Gradient g = gradient(to_field(img), center);
    BinaryImage out(img.width(), img.height());
    const double peak = max_of(g.mag);
    if (peak <= 0.0) return out;
    for (std::size_t i = 0; i < g.mag.v.size(); ++i) {
        out.pixels()[i] = g.mag.v[i] / peak > threshold ? 1 : 0;
    }
    return out;
}

std::vector<double> log_kernel() {
    const int r = kLogWidth / 2;
    const double s2 = kLogSigma * kLogSigma;
    std::vector<double> gauss;
    double gsum = 0.0;
    for (int y = -r; y <= r; ++y)
        for (int x = -r; x <= r; ++x) {
            gauss.push_back(std::exp(-(x * x + y * y) / (2.0 * s2)));
            gsum += gauss.back();
        }
    std::vector<double> k;
    double ksum = 0.0;
    std::size_t i = 0;
    for (int y = -r; y <= r; ++y)
        for (int x = -r; x <= r; ++x, ++i) {
            k.push_back(gauss[i] / gsum * (x * x + y * y - 2.0 * s2) / (s2 * s2));
            ksum += k.back();
        }
    // Zero-sum so flat regions respond with exactly 0 (up to rounding).
    const double mean = ksum / static_cast<double>(k.size());
    for (auto& v : k) v -= mean;
    return k;
}

BinaryImage zero_crossings(const GrayImage& img, double threshold) {
    static const std::vector<double> kernel = log_kernel();
    Field resp = correlate(to_field(img), kernel, kLogWidth);

    double kernel_l1 = 0.0;
    for (double v : kernel) kernel_l1 += std::abs(v);
    const double noise_floor = 1e-9 * 255.0 * kernel_l1;
    for (auto& v : resp.v)
        if (std::abs(v) <= noise_floor) v = 0.0;

    BinaryImage out(img.width(), img.height());
    const double peak = max_of(resp);
    if (peak <= 0.0) return out;
    const double min_jump = threshold * peak;

    for (int y = 0; y < resp.h; ++y) {
        for (int x = 0; x < resp.w; ++x) {
            const double c = resp(x, y);
            bool mark = false;
            if (c < 0.0) {
                const int nb[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
                for (const auto& d : nb) {
                    const int nx = x + d[0];
                    const int ny = y + d[1];
                    if (nx < 0 || ny < 0 || nx >= resp.w || ny >= resp.h) continue;
                    const double n = resp(nx, ny);
                    if (n > 0.0 && n - c > min_jump) {
                        mark = true;
                        break;
                    }
                }
            } else if (c == 0.0) {
                // Exact zero sitting between opposite signs.
                auto across = [&](int ax, int ay, int bx, int by) {
                    if (ax < 0 || ay < 0 || bx >= resp.w || by >= resp.h) return false;
                    const double a = resp(ax, ay);
                    const double b = resp(bx, by);
                    return a * b < 0.0 && std::abs(a - b) > min_jump;
                };
                mark = across(x - 1, y, x + 1, y) || across(x, y - 1, x, y + 1);
            }
            out.set(x, y, mark);
        }
    }
    return out;
}

BinaryImage canny(const GrayImage& img, double threshold) {
    const Field smooth = gaussian_blur(to_field(img), kCannySigma);
    const Gradient g = gradient(smooth, 2.0);
    const int w = img.width();
    const int h = img.height();
    BinaryImage out(w, h);
    const double peak = max_of(g.mag);
    if (peak <= 0.0) return out;

    Field nms(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double m = g.mag(x, y);
            if (m <= 0.0) continue;
            double angle = std::atan2(g.gy(x, y), g.gx(x, y)) * 180.0 / std::numbers::pi;
            if (angle < 0) angle += 180.0;
            int dx = 0;
            int dy = 0;
            if (angle < 22.5 || angle >= 157.5) {
                dx = 1;
            } else if (angle < 67.5) {
                dx = 1;
                dy = 1;
            } else if (angle < 112.5) {
                dy = 1;
            } else {
                dx = -1;
                dy = 1;
            }
            const double a = g.mag.clamped(x + dx, y + dy);
            const double b = g.mag.clamped(x - dx, y - dy);
            if (m >= a && m >= b) nms(x, y) = m / peak;
        }
    }

    const double high = threshold;
    const double low = kCannyLowRatio * threshold;
    std::vector<int> stack;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (nms(x, y) > high && !out.at(x, y)) {
                out.set(x, y, true);
                stack.push_back(y * w + x);
            }
        }
    }
    while (!stack.empty()) {
        const int cur = stack.back();
        stack.pop_back();
        const int cx = cur % w;
        const int cy = cur / w;
        for (int dy = -1; dy <= 1; ++dy) {
            for (int dx = -1; dx <= 1; ++dx) {
                const int nx = cx + dx;
                const int ny = cy + dy;
                if ((dx == 0 && dy == 0) || !out.contains(nx, ny) || out.at(nx, ny)) continue;
                if (nms(nx, ny) > low) {
                    out.set(nx, ny, true);
                    stack.push_back(ny * w + nx);
                }
            }
        }
    }
    return out;
}

}  // namespace

EdgeMethod parse_edge_method(std::string_view name) {
    if (name == "sobel") return EdgeMethod::Sobel;
    if (name == "prewitt") return EdgeMethod::Prewitt;
    if (name == "log") return EdgeMethod::Log;
    if (name == "zerocross") return EdgeMethod::ZeroCross;
    if (name == "canny") return EdgeMethod::Canny;
    throw Error(errc::kArgument, "unknown edge method '" + std::string(name) + "'");
}

std::string_view to_string(EdgeMethod method) {
    switch (method) {
        case EdgeMethod::Sobel: return "sobel";
        case EdgeMethod::Prewitt: return "prewitt";
        case EdgeMethod::Log: return "log";
        case EdgeMethod::ZeroCross: return "zerocross";
        case EdgeMethod::Canny: return "canny";
    }
    return "?";
}

BinaryImage edge_detect(const GrayImage& img, EdgeMethod method, double threshold) {
    if (!(threshold >= 0.0) || !std::isfinite(threshold)) {
        throw Error(errc::kArgument, "edge threshold must be finite and non-negative");
    }
    switch (method) {
        case EdgeMethod::Sobel: return threshold_gradient(img, 2.0, threshold);
        case EdgeMethod::Prewitt: return threshold_gradient(img, 1.0, threshold);
        case EdgeMethod::Log:
        case EdgeMethod::ZeroCross: return zero_crossings(img, threshold);
        case EdgeMethod::Canny: return canny(img, threshold);
    }
    throw Error(errc::kArgument, "unknown edge method");
}

}  // namespace opsel
