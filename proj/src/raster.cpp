#include "bsseg/raster.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <stdexcept>

namespace bsseg {

namespace {

void require_dims(int width, int height, int channels = 1) {
    if (width < 1 || height < 1 || channels < 1) {
        throw std::invalid_argument("container dimensions must be >= 1");
    }
}

}  // namespace

BinaryMask::BinaryMask(int width, int height, bool foreground)
    : width_(width), height_(height) {
    require_dims(width, height);
    data_.assign(static_cast<size_t>(width) * height, foreground ? 1 : 0);
}

int BinaryMask::fg_count() const {
    int n = 0;
    for (std::uint8_t v : data_) n += v;
    return n;
}

ScalarField::ScalarField(int width, int height, double value)
    : width_(width), height_(height) {
    require_dims(width, height);
    data_.assign(static_cast<size_t>(width) * height, value);
}

TensorField::TensorField(int width, int height, int channels, float value)
    : width_(width), height_(height), channels_(channels) {
    require_dims(width, height, channels);
    data_.assign(static_cast<size_t>(width) * height * channels, value);
}

Field3::Field3(int width, int height, double value)
    : width_(width), height_(height) {
    require_dims(width, height);
    data_.assign(static_cast<size_t>(width) * height * 3, value);
}

// ---------------------------------------------------------------------------
// PNG
// ---------------------------------------------------------------------------

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

}  // namespace

std::vector<std::uint8_t> load_gray8(const std::string& path, int& width, int& height) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw std::runtime_error("cannot open file: " + path);

    std::uint8_t sig[8];
    if (std::fread(sig, 1, 8, fp.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0) {
        throw std::runtime_error("not a PNG file: " + path);
    }

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw std::runtime_error("libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw std::runtime_error("libpng init failed");
    }

    std::vector<std::uint8_t> pixels;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw std::runtime_error("corrupt PNG: " + path);
    }

    png_init_io(png, fp.get());
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);

    const int bit_depth = png_get_bit_depth(png, info);
    const int color_type = png_get_color_type(png, info);
    if (bit_depth != 8 || color_type != PNG_COLOR_TYPE_GRAY) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw std::runtime_error("expected 8-bit single-channel grayscale PNG: " + path);
    }

    width = static_cast<int>(png_get_image_width(png, info));
    height = static_cast<int>(png_get_image_height(png, info));
    pixels.resize(static_cast<size_t>(width) * height);

    std::vector<png_bytep> rows(height);
    for (int r = 0; r < height; ++r) rows[r] = pixels.data() + static_cast<size_t>(r) * width;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return pixels;
}

void save_gray8(const std::string& path, int width, int height,
                const std::vector<std::uint8_t>& pixels) {
    require_dims(width, height);
    if (pixels.size() != static_cast<size_t>(width) * height) {
        throw std::invalid_argument("pixel buffer does not match dimensions");
    }

    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) throw std::runtime_error("cannot open file for writing: " + path);

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw std::runtime_error("libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw std::runtime_error("libpng init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw std::runtime_error("PNG write failed: " + path);
    }

    png_init_io(png, fp.get());
    png_set_IHDR(png, info, width, height, 8, PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    std::vector<png_bytep> rows(height);
    for (int r = 0; r < height; ++r) {
        rows[r] = const_cast<png_bytep>(pixels.data() + static_cast<size_t>(r) * width);
    }
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

BinaryMask load_mask(const std::string& path) {
    int width = 0, height = 0;
    const std::vector<std::uint8_t> px = load_gray8(path, width, height);
    BinaryMask mask(width, height);
    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
            mask.set(r, c, px[static_cast<size_t>(r) * width + c] >= 128);
        }
    }
    return mask;
}

void save_mask(const BinaryMask& mask, const std::string& path) {
    std::vector<std::uint8_t> px(static_cast<size_t>(mask.width()) * mask.height());
    for (int r = 0; r < mask.height(); ++r) {
        for (int c = 0; c < mask.width(); ++c) {
            px[static_cast<size_t>(r) * mask.width() + c] = mask.is_fg(r, c) ? 255 : 0;
        }
    }
    save_gray8(path, mask.width(), mask.height(), px);
}

void field_to_png(const ScalarField& field, const std::string& path) {
    double lo = field.data()[0], hi = field.data()[0];
    for (double v : field.data()) {
        if (!std::isfinite(v)) throw std::invalid_argument("field contains non-finite values");
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double span = hi - lo;
    std::vector<std::uint8_t> px(field.data().size());
    for (size_t i = 0; i < px.size(); ++i) {
        // constant field -> 0; otherwise min-max scale, round half up
        const double v01 = span > 0.0 ? (field.data()[i] - lo) / span : 0.0;
        px[i] = static_cast<std::uint8_t>(std::floor(v01 * 255.0 + 0.5));
    }
    save_gray8(path, field.width(), field.height(), px);
}

// ---------------------------------------------------------------------------
// BSNT
// ---------------------------------------------------------------------------

namespace {

constexpr char kMagic[4] = {'B', 'S', 'N', 'T'};
constexpr std::uint16_t kVersion = 1;
constexpr std::uint16_t kDtypeF32 = 0;

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
}

std::uint16_t get_u16(const std::uint8_t* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t get_u32(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

}  // namespace

void write_tensor(const TensorField& field, const std::string& path) {
    for (float v : field.data()) {
        if (!std::isfinite(v)) throw std::invalid_argument("tensor contains non-finite values");
    }

    std::vector<std::uint8_t> buf;
    buf.reserve(20 + field.data().size() * 4);
    buf.insert(buf.end(), kMagic, kMagic + 4);
    put_u16(buf, kVersion);
    put_u16(buf, kDtypeF32);
    put_u32(buf, static_cast<std::uint32_t>(field.height()));
    put_u32(buf, static_cast<std::uint32_t>(field.width()));
    put_u32(buf, static_cast<std::uint32_t>(field.channels()));
    for (float v : field.data()) {
        std::uint32_t bits;
        std::memcpy(&bits, &v, 4);
        put_u32(buf, bits);
    }

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path);
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

TensorField read_tensor(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::vector<std::uint8_t> buf((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());

    if (buf.size() < 20 || std::memcmp(buf.data(), kMagic, 4) != 0) {
        throw std::runtime_error("not a BSNT tensor file: " + path);
    }
    if (get_u16(buf.data() + 4) != kVersion) {
        throw std::runtime_error("unsupported BSNT version: " + path);
    }
    if (get_u16(buf.data() + 6) != kDtypeF32) {
        throw std::runtime_error("unsupported BSNT dtype: " + path);
    }
    const std::uint32_t height = get_u32(buf.data() + 8);
    const std::uint32_t width = get_u32(buf.data() + 12);
    const std::uint32_t channels = get_u32(buf.data() + 16);
    if (height < 1 || width < 1 || channels < 1) {
        throw std::runtime_error("BSNT header declares empty dimensions: " + path);
    }
    const std::uint64_t count = static_cast<std::uint64_t>(height) * width * channels;
    if (buf.size() != 20 + count * 4) {
        throw std::runtime_error("truncated BSNT payload: " + path);
    }

    TensorField field(static_cast<int>(width), static_cast<int>(height),
                      static_cast<int>(channels));
    for (std::uint64_t i = 0; i < count; ++i) {
        const std::uint32_t bits = get_u32(buf.data() + 20 + i * 4);
        float v;
        std::memcpy(&v, &bits, 4);
        if (!std::isfinite(v)) throw std::runtime_error("BSNT payload contains non-finite values: " + path);
        field.data()[i] = v;
    }
    return field;
}

// ---------------------------------------------------------------------------
// Conversions
// ---------------------------------------------------------------------------

TensorField to_tensor(const ScalarField& field) {
    TensorField t(field.width(), field.height(), 1);
    for (size_t i = 0; i < field.data().size(); ++i) {
        t.data()[i] = static_cast<float>(field.data()[i]);
    }
    return t;
}

TensorField to_tensor(const Field3& field) {
    TensorField t(field.width(), field.height(), 3);
    for (int j = 0; j < 3; ++j) {
        for (int r = 0; r < field.height(); ++r) {
            for (int c = 0; c < field.width(); ++c) {
                t.at(j, r, c) = static_cast<float>(field.at(r, c, j));
            }
        }
    }
    return t;
}

ScalarField scalar_from_tensor(const TensorField& field) {
    if (field.channels() != 1) throw std::invalid_argument("expected a 1-channel tensor");
    ScalarField s(field.width(), field.height());
    for (size_t i = 0; i < field.data().size(); ++i) s.data()[i] = field.data()[i];
    return s;
}

Field3 field3_from_tensor(const TensorField& field) {
    if (field.channels() != 3) throw std::invalid_argument("expected a 3-channel tensor");
    Field3 f(field.width(), field.height());
    for (int j = 0; j < 3; ++j) {
        for (int r = 0; r < field.height(); ++r) {
            for (int c = 0; c < field.width(); ++c) {
                f.at(r, c, j) = field.at(j, r, c);
            }
        }
    }
    return f;
}

}  // namespace bsseg
