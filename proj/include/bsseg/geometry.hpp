#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bsseg/raster.hpp"
#include "bsseg/rng.hpp"

namespace bsseg {

struct PixelCoord {
    int row = 0;
    int col = 0;
    bool operator==(const PixelCoord&) const = default;
};

// Foreground pixels of a mask that touch background through a 4-connected
// neighbor. Points are unique and listed in row-major scan order.
class ContourSet {
public:
    ContourSet(int width, int height, std::vector<PixelCoord> points);

    int width() const { return width_; }
    int height() const { return height_; }
    const std::vector<PixelCoord>& points() const { return points_; }
    bool empty() const { return points_.empty(); }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<PixelCoord> points_;
};

// The contour dilated to `width_px` total width: a pixel is a member iff
// its Euclidean distance to the nearest contour point is <= width_px / 2.
class BandMask {
public:
    BandMask(int width_px, ScalarField distances);

    int width() const { return distances_.width(); }
    int height() const { return distances_.height(); }
    int width_param() const { return width_px_; }
    double radius() const { return width_px_ / 2.0; }

    bool contains(int row, int col) const { return distances_.at(row, col) <= radius(); }
    double distance(int row, int col) const { return distances_.at(row, col); }
    const ScalarField& distances() const { return distances_; }

    int member_count() const;

private:
    int width_px_ = 0;
    ScalarField distances_;
};

// Foreground pixels with at least one 4-connected background neighbor.
// Out-of-bounds neighbors are ignored: the image border is not background,
// so a foreground region touching the border produces no contour there.
ContourSet extract_contour(const BinaryMask& mask);

// Exact Euclidean distance to the nearest contour point, per pixel.
// Empty contour yields nullopt.
std::optional<ScalarField> distance_transform(const ContourSet& contour);

// Band of total width `width_px` around the contour. An empty contour
// (nullopt distances) produces an empty band with infinite distances.
BandMask make_band(const ContourSet& contour, const std::optional<ScalarField>& distances,
                   int width_px);

// ---------------------------------------------------------------------------
// Spatial augmentation
// ---------------------------------------------------------------------------

struct CropFlip {
    int row0 = 0;
    int col0 = 0;
    int size = 0;
    bool flip = false;  // horizontal
};

// Draws a uniform crop offset and a flip decision. Draw order is fixed:
// row offset, column offset, flip.
CropFlip sample_crop_flip(Rng& rng, int width, int height, int crop, double flip_prob);

TensorField apply_crop_flip(const TensorField& field, const CropFlip& t);
ScalarField apply_crop_flip(const ScalarField& field, const CropFlip& t);
BinaryMask apply_crop_flip(const BinaryMask& mask, const CropFlip& t);
Field3 apply_crop_flip(const Field3& field, const CropFlip& t);

// Identical random crop + flip applied to an image and its labels.
std::pair<TensorField, BinaryMask> augment_pair(const TensorField& image,
                                                const BinaryMask& labels, int crop,
                                                double flip_prob, Rng& rng);
std::pair<TensorField, Field3> augment_pair(const TensorField& image, const Field3& labels,
                                            int crop, double flip_prob, Rng& rng);

// Stacks [R, G, B, x_norm, y_norm, mean_mask] into a 6-channel input.
// x_norm(col) = col / (width - 1), y_norm(row) = row / (height - 1);
// single-column or single-row images use 0.
TensorField assemble_input(const TensorField& rgb, const ScalarField& mean_mask);

}  // namespace bsseg
