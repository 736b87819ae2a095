#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "bsseg/kernels.hpp"
#include "bsseg/raster.hpp"

namespace bsseg {

// Class ordering matches the soft-label vector: [fg, bdry, bg].
enum class SegClass : std::uint8_t { Foreground = 0, Boundary = 1, Background = 2 };

using LogitField = Field3;  // pre-softmax scores z
using ProbField = Field3;   // softmax probabilities y

// Per-pixel hard class labels.
class ClassMap {
public:
    ClassMap(int width, int height, SegClass fill = SegClass::Background);

    int width() const { return width_; }
    int height() const { return height_; }

    SegClass at(int row, int col) const {
        return static_cast<SegClass>(labels_[row * width_ + col]);
    }
    void set(int row, int col, SegClass c) {
        labels_[row * width_ + col] = static_cast<std::uint8_t>(c);
    }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> labels_;
};

ClassMap labels_from_mask(const BinaryMask& mask);

// Scalar loss (mean over pixels) plus its gradient with respect to every
// logit. Gradient components sum to zero per pixel for all segmentation
// losses below.
struct LossResult {
    double value = 0.0;
    Field3 grad;
};

// Per-pixel softmax, computed with max subtraction.
ProbField softmax_pixelwise(const LogitField& logits);

// Soft-label cross-entropy against an individual kernel:
//   value = mean_i of -sum_j K_j log y_j,   dvalue/dz = (y - K) / N.
LossResult ik_loss(const LogitField& logits, const SoftLabelField& kernel);

// Position-weighted hard-label cross-entropy:
//   value = mean_i of -K_s log y_g,   dvalue/dz = K_s (y - onehot(g)) / N.
LossResult gk_loss(const LogitField& logits, const ClassMap& labels,
                   const GlobalKernel& kernel);

// Both kernels at once: the global weight multiplies the soft-label term.
// Reduces to ik_loss when the global kernel is 1 everywhere and to gk_loss
// when the soft labels are one-hot.
LossResult combined_loss(const LogitField& logits, const SoftLabelField& kernel_indv,
                         const GlobalKernel& kernel_global);

// Plain hard-label cross-entropy baseline.
LossResult ce_loss(const LogitField& logits, const ClassMap& labels);

enum class HairClass : std::uint8_t { LongHair = 0, ShortHair = 1 };

struct AttrLossResult {
    double value = 0.0;
    std::array<double, 2> grad{0.0, 0.0};  // y - onehot(label)
};

// Binary softmax cross-entropy for the attribute head.
AttrLossResult attribute_loss(const std::array<double, 2>& logits, HairClass label);

}  // namespace bsseg
