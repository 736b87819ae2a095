#include <doctest.h>

#include <png.h>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "bsseg/raster.hpp"
#include "bsseg/rng.hpp"
#include "support/tempdir.hpp"

using namespace bsseg;
using testsupport::TempDir;
using testsupport::read_bytes;

namespace {

// Writes a zero-filled PNG with an arbitrary bit depth / color type.
void write_png_raw(const std::string& path, int w, int h, int bit_depth, int color_type) {
    std::FILE* fp = std::fopen(path.c_str(), "wb");
    REQUIRE(fp != nullptr);
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png_create_info_struct(png);
    REQUIRE(setjmp(png_jmpbuf(png)) == 0);
    png_init_io(png, fp);
    png_set_IHDR(png, info, w, h, bit_depth, color_type, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    const int channels = color_type == PNG_COLOR_TYPE_RGB ? 3 : 1;
    std::vector<png_byte> row(static_cast<size_t>(w) * channels * (bit_depth / 8), 0);
    for (int r = 0; r < h; ++r) png_write_row(png, row.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
}

}  // namespace

TEST_SUITE("raster") {

TEST_CASE("containers reject dimension-0 construction") {
    CHECK_THROWS_AS(BinaryMask(0, 4), std::invalid_argument);
    CHECK_THROWS_AS(BinaryMask(4, 0), std::invalid_argument);
    CHECK_THROWS_AS(ScalarField(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(TensorField(1, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(Field3(1, 0), std::invalid_argument);
}

TEST_CASE("mask threshold at 128") {
    TempDir tmp("raster_threshold");
    const std::string path = tmp.file("gray.png");
    save_gray8(path, 2, 2, {0, 127, 128, 255});
    const BinaryMask mask = load_mask(path);
    CHECK_FALSE(mask.is_fg(0, 0));
    CHECK_FALSE(mask.is_fg(0, 1));
    CHECK(mask.is_fg(1, 0));
    CHECK(mask.is_fg(1, 1));
}

TEST_CASE("all-255 and all-0 PNGs") {
    TempDir tmp("raster_allconst");
    save_gray8(tmp.file("hi.png"), 3, 2, std::vector<std::uint8_t>(6, 255));
    save_gray8(tmp.file("lo.png"), 3, 2, std::vector<std::uint8_t>(6, 0));
    CHECK(load_mask(tmp.file("hi.png")).fg_count() == 6);
    CHECK(load_mask(tmp.file("lo.png")).fg_count() == 0);
}

TEST_CASE("save_mask writes 255/0") {
    TempDir tmp("raster_save");
    BinaryMask one(1, 1, true);
    save_mask(one, tmp.file("one.png"));
    int w = 0, h = 0;
    auto px = load_gray8(tmp.file("one.png"), w, h);
    CHECK(w == 1);
    CHECK(h == 1);
    CHECK(px[0] == 255);

    BinaryMask checker(2, 2);
    checker.set(0, 0, true);
    checker.set(1, 1, true);
    save_mask(checker, tmp.file("checker.png"));
    px = load_gray8(tmp.file("checker.png"), w, h);
    CHECK(px == std::vector<std::uint8_t>{255, 0, 0, 255});
}

TEST_CASE("mask PNG round trip is the identity") {
    TempDir tmp("raster_roundtrip");
    Rng rng(2024);
    for (int i = 0; i < 20; ++i) {
        const int w = 1 + static_cast<int>(rng.uniform_below(16));
        const int h = 1 + static_cast<int>(rng.uniform_below(16));
        BinaryMask mask(w, h);
        for (int r = 0; r < h; ++r) {
            for (int c = 0; c < w; ++c) mask.set(r, c, rng.uniform_below(2) == 1);
        }
        const std::string path = tmp.file("m.png");
        save_mask(mask, path);
        CHECK(load_mask(path) == mask);
    }
}

TEST_CASE("mask loading rejects bad inputs") {
    TempDir tmp("raster_badmask");
    CHECK_THROWS(load_mask(tmp.file("missing.png")));

    std::ofstream(tmp.file("not_png.png")) << "plain text";
    CHECK_THROWS_WITH_AS(load_mask(tmp.file("not_png.png")),
                         doctest::Contains("not a PNG"), std::runtime_error);

    // multi-channel and 16-bit PNGs are format errors
    write_png_raw(tmp.file("rgb.png"), 2, 2, 8, PNG_COLOR_TYPE_RGB);
    CHECK_THROWS_WITH_AS(load_mask(tmp.file("rgb.png")),
                         doctest::Contains("8-bit single-channel"), std::runtime_error);
    write_png_raw(tmp.file("deep.png"), 2, 2, 16, PNG_COLOR_TYPE_GRAY);
    CHECK_THROWS_WITH_AS(load_mask(tmp.file("deep.png")),
                         doctest::Contains("8-bit single-channel"), std::runtime_error);
}

TEST_CASE("BSNT layout: 1x1x1 field is 20 header + 4 payload bytes") {
    TempDir tmp("raster_bsnt_size");
    const std::string path = tmp.file("t.bsnt");
    write_tensor(TensorField(1, 1, 1, 0.0f), path);
    CHECK(std::filesystem::file_size(path) == 24);

    const auto bytes = read_bytes(path);
    CHECK(bytes[0] == 'B');
    CHECK(bytes[1] == 'S');
    CHECK(bytes[2] == 'N');
    CHECK(bytes[3] == 'T');
}

TEST_CASE("BSNT round trip is bitwise") {
    TempDir tmp("raster_bsnt_rt");
    Rng rng(7);
    TensorField t(8, 8, 3);
    for (float& v : t.data()) v = static_cast<float>(rng.uniform(-5.0, 5.0));
    const std::string path = tmp.file("t.bsnt");
    write_tensor(t, path);
    const TensorField back = read_tensor(path);
    CHECK(back == t);

    // byte-identical on rewrite
    const auto first = read_bytes(path);
    write_tensor(back, path);
    CHECK(read_bytes(path) == first);
}

TEST_CASE("BSNT rejects corrupt input") {
    TempDir tmp("raster_bsnt_bad");
    const std::string path = tmp.file("t.bsnt");
    write_tensor(TensorField(2, 2, 1, 1.0f), path);

    auto corrupt = [&](size_t offset, char value, const char* name) {
        auto bytes = read_bytes(path);
        bytes[offset] = value;
        std::ofstream(tmp.file(name), std::ios::binary)
            .write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    };
    corrupt(0, 'X', "magic.bsnt");
    CHECK_THROWS_WITH_AS(read_tensor(tmp.file("magic.bsnt")), doctest::Contains("not a BSNT"),
                         std::runtime_error);
    corrupt(4, 9, "version.bsnt");
    CHECK_THROWS_WITH_AS(read_tensor(tmp.file("version.bsnt")), doctest::Contains("version"),
                         std::runtime_error);
    corrupt(6, 1, "dtype.bsnt");
    CHECK_THROWS_WITH_AS(read_tensor(tmp.file("dtype.bsnt")), doctest::Contains("dtype"),
                         std::runtime_error);

    auto bytes = read_bytes(path);
    bytes.pop_back();
    std::ofstream(tmp.file("short.bsnt"), std::ios::binary)
        .write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    CHECK_THROWS_WITH_AS(read_tensor(tmp.file("short.bsnt")), doctest::Contains("truncated"),
                         std::runtime_error);
}

TEST_CASE("write_tensor rejects non-finite data") {
    TempDir tmp("raster_nonfinite");
    TensorField t(1, 1, 1);
    t.data()[0] = std::numeric_limits<float>::quiet_NaN();
    CHECK_THROWS_AS(write_tensor(t, tmp.file("nan.bsnt")), std::invalid_argument);
}

TEST_CASE("field_to_png min-max scaling") {
    TempDir tmp("raster_fieldpng");
    int w = 0, h = 0;

    field_to_png(ScalarField(3, 1, 4.2), tmp.file("const.png"));
    CHECK(load_gray8(tmp.file("const.png"), w, h) == std::vector<std::uint8_t>{0, 0, 0});

    ScalarField two(2, 1);
    two.at(0, 1) = 1.0;
    field_to_png(two, tmp.file("two.png"));
    CHECK(load_gray8(tmp.file("two.png"), w, h) == std::vector<std::uint8_t>{0, 255});

    ScalarField three(3, 1);
    three.at(0, 1) = 0.5;
    three.at(0, 2) = 1.0;
    field_to_png(three, tmp.file("three.png"));
    // 0.5 * 255 = 127.5, round half up
    CHECK(load_gray8(tmp.file("three.png"), w, h) == std::vector<std::uint8_t>{0, 128, 255});
}

TEST_CASE("tensor conversions preserve layout") {
    Field3 f(2, 2);
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) f.set_vec(r, c, {r + 0.0, c + 0.25, r * c + 0.5});
    }
    CHECK(field3_from_tensor(to_tensor(f)) == f);

    ScalarField s(3, 2);
    s.at(1, 2) = -1.5;
    CHECK(scalar_from_tensor(to_tensor(s)) == s);
    CHECK_THROWS_AS(scalar_from_tensor(to_tensor(f)), std::invalid_argument);
}

}  // TEST_SUITE
