#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace bsseg {

// Per-pixel foreground/background map, row-major. Immutable once built
// except through set(); safe to share read-only across threads.
class BinaryMask {
public:
    BinaryMask(int width, int height, bool foreground = false);

    int width() const { return width_; }
    int height() const { return height_; }
    int pixel_count() const { return width_ * height_; }

    bool is_fg(int row, int col) const { return data_[idx(row, col)] != 0; }
    void set(int row, int col, bool fg) { data_[idx(row, col)] = fg ? 1 : 0; }

    int fg_count() const;

    bool operator==(const BinaryMask&) const = default;

private:
    int idx(int row, int col) const { return row * width_ + col; }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> data_;  // 1 = foreground
};

// H x W grid of doubles, row-major.
class ScalarField {
public:
    ScalarField(int width, int height, double value = 0.0);

    int width() const { return width_; }
    int height() const { return height_; }

    double at(int row, int col) const { return data_[row * width_ + col]; }
    double& at(int row, int col) { return data_[row * width_ + col]; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    bool operator==(const ScalarField&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> data_;
};

// H x W x C single-precision tensor, planar (channel-major) layout so
// per-channel operations are contiguous scans.
class TensorField {
public:
    TensorField(int width, int height, int channels, float value = 0.0f);

    int width() const { return width_; }
    int height() const { return height_; }
    int channels() const { return channels_; }

    float at(int ch, int row, int col) const { return data_[idx(ch, row, col)]; }
    float& at(int ch, int row, int col) { return data_[idx(ch, row, col)]; }

    const std::vector<float>& data() const { return data_; }
    std::vector<float>& data() { return data_; }

    bool operator==(const TensorField&) const = default;

private:
    int idx(int ch, int row, int col) const {
        return (ch * height_ + row) * width_ + col;
    }

    int width_ = 0;
    int height_ = 0;
    int channels_ = 0;
    std::vector<float> data_;
};

// H x W grid of per-pixel 3-vectors (doubles, interleaved). Shared storage
// for soft-label kernels, logits, probabilities and logit gradients; the
// class ordering is [fg, bdry, bg] everywhere.
class Field3 {
public:
    Field3(int width, int height, double value = 0.0);

    int width() const { return width_; }
    int height() const { return height_; }
    int pixel_count() const { return width_ * height_; }

    double at(int row, int col, int j) const { return data_[idx(row, col) + j]; }
    double& at(int row, int col, int j) { return data_[idx(row, col) + j]; }

    std::array<double, 3> vec(int row, int col) const {
        const int i = idx(row, col);
        return {data_[i], data_[i + 1], data_[i + 2]};
    }
    void set_vec(int row, int col, const std::array<double, 3>& v) {
        const int i = idx(row, col);
        data_[i] = v[0];
        data_[i + 1] = v[1];
        data_[i + 2] = v[2];
    }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    bool operator==(const Field3&) const = default;

private:
    int idx(int row, int col) const { return 3 * (row * width_ + col); }

    int width_ = 0;
    int height_ = 0;
    std::vector<double> data_;
};

// ---------------------------------------------------------------------------
// PNG I/O (8-bit grayscale only)
// ---------------------------------------------------------------------------

// Raw 8-bit grayscale PNG access. load rejects anything that is not an
// 8-bit single-channel PNG; row-major byte buffer.
std::vector<std::uint8_t> load_gray8(const std::string& path, int& width, int& height);
void save_gray8(const std::string& path, int width, int height,
                const std::vector<std::uint8_t>& pixels);

// Mask convention: pixel >= 128 is foreground on load; foreground is
// written as 255, background as 0. load_mask(save_mask(m)) == m.
BinaryMask load_mask(const std::string& path);
void save_mask(const BinaryMask& mask, const std::string& path);

// Min-max scales the field to [0,255] (round half up) and writes a
// grayscale PNG. A constant field maps to all-0.
void field_to_png(const ScalarField& field, const std::string& path);

// ---------------------------------------------------------------------------
// BSNT tensor container
// ---------------------------------------------------------------------------
// Layout: magic "BSNT", u16 version=1, u16 dtype=0 (float32), u32 height,
// u32 width, u32 channels, then planar row-major float32 payload, all
// little-endian. read_tensor(write_tensor(t)) is a bitwise identity.

void write_tensor(const TensorField& field, const std::string& path);
TensorField read_tensor(const std::string& path);

// ---------------------------------------------------------------------------
// Conversions between the containers (float32 truncation where needed)
// ---------------------------------------------------------------------------

TensorField to_tensor(const ScalarField& field);
TensorField to_tensor(const Field3& field);
ScalarField scalar_from_tensor(const TensorField& field);   // requires 1 channel
Field3 field3_from_tensor(const TensorField& field);        // requires 3 channels

}  // namespace bsseg
