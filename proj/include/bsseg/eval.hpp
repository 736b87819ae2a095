#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bsseg/raster.hpp"

namespace bsseg {

enum class TriClass : std::uint8_t { Background = 0, Unknown = 1, Foreground = 2 };

// Three-level map for image matting: the unknown region is the boundary
// band of the source mask and always contains its contour pixels.
class Trimap {
public:
    Trimap(int width, int height, TriClass fill = TriClass::Background);

    int width() const { return width_; }
    int height() const { return height_; }

    TriClass at(int row, int col) const {
        return static_cast<TriClass>(labels_[row * width_ + col]);
    }
    void set(int row, int col, TriClass c) {
        labels_[row * width_ + col] = static_cast<std::uint8_t>(c);
    }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> labels_;
};

enum class IouMode { Foreground, ClassMean };

// |fg(pred) AND fg(gt)| / |fg(pred) OR fg(gt)|; both-empty scores 1.
// ClassMean averages the foreground IoU with the background IoU.
double pair_iou(const BinaryMask& pred, const BinaryMask& gt,
                IouMode mode = IouMode::Foreground);

// Mean of pair_iou over (prediction, ground truth) pairs.
double mean_iou(const std::vector<std::pair<BinaryMask, BinaryMask>>& pairs,
                IouMode mode = IouMode::Foreground);

// IoU restricted to pixels within Euclidean distance `band_distance` of the
// ground-truth contour; an empty band scores 1.
double boundary_band_iou(const BinaryMask& pred, const BinaryMask& gt, int band_distance);

// Unknown = band of total width `width_px` around the mask contour;
// everything else keeps its fg/bg label.
Trimap make_trimap(const BinaryMask& mask, int width_px);

// PNG encoding: bg=0, unknown=128, fg=255.
void save_trimap(const Trimap& trimap, const std::string& path);
Trimap load_trimap(const std::string& path);

struct EvalRow {
    std::string image_id;
    double iou = 0.0;
    double band_iou = 0.0;
};

// CSV: image_id,iou,band_iou
void write_eval_report(const std::vector<EvalRow>& rows, const std::string& path);

}  // namespace bsseg
