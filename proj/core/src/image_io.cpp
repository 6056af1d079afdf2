#include "opsel/image_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>

namespace opsel {
namespace {

class HeaderReader {
public:
    explicit HeaderReader(const std::string& bytes) : bytes_(bytes) {}

    // Next whitespace-separated token, skipping '#' comments.
    std::string token() {
        skip_space();
        std::string out;
        while (pos_ < bytes_.size() && !std::isspace(static_cast<unsigned char>(bytes_[pos_])) &&
               bytes_[pos_] != '#') {
            out.push_back(bytes_[pos_++]);
        }
        return out;
    }

    long number(const std::string& what) {
        const std::string tok = token();
        if (tok.empty() || !std::all_of(tok.begin(), tok.end(),
                                        [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
            throw Error(errc::kFormat, "malformed " + what + " in raster header");
        }
        return std::stol(tok);
    }

    // Single ASCII bit for P1, which may be packed without separators.
    int bit() {
        skip_space();
        if (pos_ >= bytes_.size()) throw Error(errc::kFormat, "truncated raster data");
        const char c = bytes_[pos_++];
        if (c != '0' && c != '1') throw Error(errc::kFormat, "malformed bitmap data");
        return c - '0';
    }

    // Binary payload begins after exactly one whitespace byte.
    std::size_t payload_offset() {
        if (pos_ >= bytes_.size()) throw Error(errc::kFormat, "truncated raster data");
        return pos_ + 1;
    }

private:
    void skip_space() {
        while (pos_ < bytes_.size()) {
            const char c = bytes_[pos_];
            if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    const std::string& bytes_;
    std::size_t pos_ = 0;
};

std::uint8_t scale(long v, long maxval) {
    if (v < 0 || v > maxval) throw Error(errc::kFormat, "sample exceeds maxval");
    if (maxval == 255) return static_cast<std::uint8_t>(v);
    return static_cast<std::uint8_t>(std::lround(static_cast<double>(v) * 255.0 / static_cast<double>(maxval)));
}

std::uint8_t luminance(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    const double y = 0.299 * r + 0.587 * g + 0.114 * b;
    return static_cast<std::uint8_t>(std::clamp(std::lround(y), 0L, 255L));
}

}  // namespace

GrayImage load_gray(const std::filesystem::path& path) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) {
        throw Error(errc::kIo, "file not found: " + path.string());
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(errc::kIo, "cannot open " + path.string());
    const std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};

    HeaderReader reader(bytes);
    const std::string magic = reader.token();
    if (magic.size() != 2 || magic[0] != 'P' || magic[1] < '1' || magic[1] > '6') {
        throw Error(errc::kFormat, "unsupported format: " + path.string());
    }
    const int kind = magic[1] - '0';
    const long width = reader.number("width");
    const long height = reader.number("height");
    if (width < 1 || height < 1) {
        throw Error(errc::kDimension, "degenerate dimensions in " + path.string());
    }
    if (width > 1 << 16 || height > 1 << 16) {
        throw Error(errc::kFormat, "raster too large: " + path.string());
    }
    const bool bitmap = kind == 1 || kind == 4;
    const long maxval = bitmap ? 1 : reader.number("maxval");
    if (maxval < 1 || maxval > 65535) throw Error(errc::kFormat, "unsupported maxval");

    const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    const bool color = kind == 3 || kind == 6;
    std::vector<std::uint8_t> out(n);

    if (kind == 1) {
        // PBM: 1 is black.
        for (auto& v : out) v = reader.bit() ? 0 : 255;
    } else if (kind == 2 || kind == 3) {
        for (auto& v : out) {
            if (color) {
                const auto r = scale(reader.number("sample"), maxval);
                const auto g = scale(reader.number("sample"), maxval);
                const auto b = scale(reader.number("sample"), maxval);
                v = luminance(r, g, b);
            } else {
                v = scale(reader.number("sample"), maxval);
            }
        }
    } else {
        std::size_t off = reader.payload_offset();
        auto need = [&](std::size_t count) {
            if (off + count > bytes.size()) throw Error(errc::kFormat, "truncated raster data");
        };
        auto byte = [&](std::size_t i) { return static_cast<unsigned char>(bytes[i]); };
        if (kind == 4) {
            const std::size_t row_bytes = (static_cast<std::size_t>(width) + 7) / 8;
            need(row_bytes * static_cast<std::size_t>(height));
            for (long y = 0; y < height; ++y) {
                for (long x = 0; x < width; ++x) {
                    const auto b = byte(off + static_cast<std::size_t>(y) * row_bytes + static_cast<std::size_t>(x / 8));
                    const bool black = (b >> (7 - x % 8)) & 1;
                    out[static_cast<std::size_t>(y * width + x)] = black ? 0 : 255;
                }
            }
        } else {
            const std::size_t sample_bytes = maxval > 255 ? 2 : 1;
            const std::size_t channels = color ? 3 : 1;
            need(n * channels * sample_bytes);
            auto sample = [&]() -> std::uint8_t {
                long v = byte(off);
                if (sample_bytes == 2) v = (v << 8) | byte(off + 1);
                off += sample_bytes;
                return scale(v, maxval);
            };
            for (auto& v : out) {
                if (color) {
                    const auto r = sample();
                    const auto g = sample();
                    const auto b = sample();
                    v = luminance(r, g, b);
                } else {
                    v = sample();
                }
            }
        }
    }
    return GrayImage(static_cast<int>(width), static_cast<int>(height), std::move(out));
}

BinaryImage load_binary(const std::filesystem::path& path) {
    const GrayImage gray = load_gray(path);
    std::vector<std::uint8_t> bits(gray.size());
    std::transform(gray.pixels().begin(), gray.pixels().end(), bits.begin(),
                   [](std::uint8_t v) { return v >= 128 ? 1 : 0; });
    return BinaryImage(gray.width(), gray.height(), std::move(bits));
}

void save_gray(const GrayImage& img, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(errc::kIo, "cannot write " + path.string());
    out << "P5\n" << img.width() << ' ' << img.height() << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels().data()),
              static_cast<std::streamsize>(img.size()));
    if (!out) throw Error(errc::kIo, "write failed: " + path.string());
}

void save_binary(const BinaryImage& img, const std::filesystem::path& path) {
    std::vector<std::uint8_t> bytes(img.size());
    std::transform(img.pixels().begin(), img.pixels().end(), bytes.begin(),
                   [](std::uint8_t v) { return v ? 255 : 0; });
    save_gray(GrayImage(img.width(), img.height(), std::move(bytes)), path);
}

bool is_raster_path(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext == ".pgm" || ext == ".pbm" || ext == ".ppm" || ext == ".pnm";
}

}  // namespace opsel
