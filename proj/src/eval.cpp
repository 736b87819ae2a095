#include "bsseg/eval.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "bsseg/geometry.hpp"

namespace bsseg {

Trimap::Trimap(int width, int height, TriClass fill) : width_(width), height_(height) {
    if (width < 1 || height < 1) throw std::invalid_argument("trimap dimensions must be >= 1");
    labels_.assign(static_cast<size_t>(width) * height, static_cast<std::uint8_t>(fill));
}

namespace {

void require_same_dims(const BinaryMask& a, const BinaryMask& b) {
    if (a.width() != b.width() || a.height() != b.height()) {
        throw std::invalid_argument("masks have mismatched dimensions");
    }
}

double fg_iou(const BinaryMask& pred, const BinaryMask& gt, bool invert) {
    long long inter = 0, uni = 0;
    for (int r = 0; r < pred.height(); ++r) {
        for (int c = 0; c < pred.width(); ++c) {
            const bool p = pred.is_fg(r, c) != invert;
            const bool g = gt.is_fg(r, c) != invert;
            inter += p && g;
            uni += p || g;
        }
    }
    return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace

double pair_iou(const BinaryMask& pred, const BinaryMask& gt, IouMode mode) {
    require_same_dims(pred, gt);
    const double fg = fg_iou(pred, gt, false);
    if (mode == IouMode::Foreground) return fg;
    return 0.5 * (fg + fg_iou(pred, gt, true));
}

double mean_iou(const std::vector<std::pair<BinaryMask, BinaryMask>>& pairs, IouMode mode) {
    if (pairs.empty()) throw std::invalid_argument("mean IoU needs at least one pair");
    double sum = 0.0;
    for (const auto& [pred, gt] : pairs) sum += pair_iou(pred, gt, mode);
    return sum / static_cast<double>(pairs.size());
}

double boundary_band_iou(const BinaryMask& pred, const BinaryMask& gt, int band_distance) {
    require_same_dims(pred, gt);
    if (band_distance < 1) throw std::invalid_argument("band distance must be >= 1");
    const ContourSet contour = extract_contour(gt);
    const std::optional<ScalarField> dist = distance_transform(contour);
    if (!dist) return 1.0;  // no contour, empty band

    long long inter = 0, uni = 0;
    for (int r = 0; r < gt.height(); ++r) {
        for (int c = 0; c < gt.width(); ++c) {
            if (dist->at(r, c) > band_distance) continue;
            inter += pred.is_fg(r, c) && gt.is_fg(r, c);
            uni += pred.is_fg(r, c) || gt.is_fg(r, c);
        }
    }
    return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

Trimap make_trimap(const BinaryMask& mask, int width_px) {
    if (width_px < 0) throw std::invalid_argument("trimap width must be >= 0");
    const ContourSet contour = extract_contour(mask);
    const std::optional<ScalarField> dist = distance_transform(contour);
    const BandMask band = make_band(contour, dist, width_px);

    Trimap trimap(mask.width(), mask.height());
    for (int r = 0; r < mask.height(); ++r) {
        for (int c = 0; c < mask.width(); ++c) {
            if (band.contains(r, c)) {
                trimap.set(r, c, TriClass::Unknown);
            } else {
                trimap.set(r, c, mask.is_fg(r, c) ? TriClass::Foreground : TriClass::Background);
            }
        }
    }
    return trimap;
}

void save_trimap(const Trimap& trimap, const std::string& path) {
    std::vector<std::uint8_t> px(static_cast<size_t>(trimap.width()) * trimap.height());
    for (int r = 0; r < trimap.height(); ++r) {
        for (int c = 0; c < trimap.width(); ++c) {
            std::uint8_t v = 0;
            if (trimap.at(r, c) == TriClass::Unknown) v = 128;
            if (trimap.at(r, c) == TriClass::Foreground) v = 255;
            px[static_cast<size_t>(r) * trimap.width() + c] = v;
        }
    }
    save_gray8(path, trimap.width(), trimap.height(), px);
}

Trimap load_trimap(const std::string& path) {
    int width = 0, height = 0;
    const std::vector<std::uint8_t> px = load_gray8(path, width, height);
    Trimap trimap(width, height);
    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
            const std::uint8_t v = px[static_cast<size_t>(r) * width + c];
            if (v != 0 && v != 128 && v != 255) {
                throw std::runtime_error("not a trimap PNG (expected values {0,128,255}): " + path);
            }
            trimap.set(r, c, v == 0 ? TriClass::Background
                                    : (v == 128 ? TriClass::Unknown : TriClass::Foreground));
        }
    }
    return trimap;
}

void write_eval_report(const std::vector<EvalRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path);
    out << "image_id,iou,band_iou\n";
    char buf[256];
    for (const EvalRow& row : rows) {
        std::snprintf(buf, sizeof(buf), "%s,%.9g,%.9g\n", row.image_id.c_str(), row.iou,
                      row.band_iou);
        out << buf;
    }
}

}  // namespace bsseg
