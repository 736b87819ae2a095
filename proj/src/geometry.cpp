#include "bsseg/geometry.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace bsseg {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

ContourSet::ContourSet(int width, int height, std::vector<PixelCoord> points)
    : width_(width), height_(height), points_(std::move(points)) {
    if (width < 1 || height < 1) throw std::invalid_argument("contour dimensions must be >= 1");
    for (const PixelCoord& p : points_) {
        if (p.row < 0 || p.row >= height || p.col < 0 || p.col >= width) {
            throw std::invalid_argument("contour point out of bounds");
        }
    }
}

BandMask::BandMask(int width_px, ScalarField distances)
    : width_px_(width_px), distances_(std::move(distances)) {
    if (width_px < 0) throw std::invalid_argument("band width must be >= 0");
}

int BandMask::member_count() const {
    int n = 0;
    for (double d : distances_.data()) n += (d <= radius());
    return n;
}

ContourSet extract_contour(const BinaryMask& mask) {
    const int h = mask.height(), w = mask.width();
    std::vector<PixelCoord> points;
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            if (!mask.is_fg(r, c)) continue;
            const bool bg_neighbor = (r > 0 && !mask.is_fg(r - 1, c)) ||
                                     (r + 1 < h && !mask.is_fg(r + 1, c)) ||
                                     (c > 0 && !mask.is_fg(r, c - 1)) ||
                                     (c + 1 < w && !mask.is_fg(r, c + 1));
            if (bg_neighbor) points.push_back({r, c});
        }
    }
    return ContourSet(w, h, std::move(points));
}

namespace {

// Lower envelope of parabolas f[q] + (x - q)^2 sampled at integer x,
// skipping infinite f. Felzenszwalb & Huttenlocher; squared distances
// stay integer-valued so the transform is exact.
void parabolic_pass(const std::vector<double>& f, std::vector<double>& out, int n,
                    std::vector<int>& v, std::vector<double>& z) {
    int k = -1;
    for (int q = 0; q < n; ++q) {
        if (f[q] == kInf) continue;
        if (k < 0) {
            k = 0;
            v[0] = q;
            z[0] = -kInf;
            z[1] = kInf;
            continue;
        }
        double s = ((f[q] + static_cast<double>(q) * q) -
                    (f[v[k]] + static_cast<double>(v[k]) * v[k])) /
                   (2.0 * (q - v[k]));
        while (k > 0 && s <= z[k]) {
            --k;
            s = ((f[q] + static_cast<double>(q) * q) -
                 (f[v[k]] + static_cast<double>(v[k]) * v[k])) /
                (2.0 * (q - v[k]));
        }
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = kInf;
    }
    if (k < 0) {
        for (int x = 0; x < n; ++x) out[x] = kInf;
        return;
    }
    int j = 0;
    for (int x = 0; x < n; ++x) {
        while (z[j + 1] < x) ++j;
        const double dx = x - v[j];
        out[x] = dx * dx + f[v[j]];
    }
}

}  // namespace

std::optional<ScalarField> distance_transform(const ContourSet& contour) {
    if (contour.empty()) return std::nullopt;
    const int h = contour.height(), w = contour.width();

    // Row pass: squared distance to the nearest contour point within the
    // same row (inf if the row has none).
    ScalarField rowsq(w, h, kInf);
    {
        std::vector<std::uint8_t> seed(static_cast<size_t>(w) * h, 0);
        for (const PixelCoord& p : contour.points()) seed[p.row * w + p.col] = 1;
        for (int r = 0; r < h; ++r) {
            double d = kInf;
            for (int c = 0; c < w; ++c) {
                d = seed[r * w + c] ? 0.0 : d + 1.0;
                rowsq.at(r, c) = d;
            }
            d = kInf;
            for (int c = w - 1; c >= 0; --c) {
                d = seed[r * w + c] ? 0.0 : d + 1.0;
                rowsq.at(r, c) = std::min(rowsq.at(r, c), d);
            }
            for (int c = 0; c < w; ++c) {
                const double v = rowsq.at(r, c);
                rowsq.at(r, c) = v == kInf ? kInf : v * v;
            }
        }
    }

    // Column pass: envelope over rows.
    ScalarField dist(w, h, 0.0);
    std::vector<double> f(h), colsq(h);
    std::vector<int> v(h);
    std::vector<double> z(h + 1);
    for (int c = 0; c < w; ++c) {
        for (int r = 0; r < h; ++r) f[r] = rowsq.at(r, c);
        parabolic_pass(f, colsq, h, v, z);
        for (int r = 0; r < h; ++r) dist.at(r, c) = std::sqrt(colsq[r]);
    }
    return dist;
}

BandMask make_band(const ContourSet& contour, const std::optional<ScalarField>& distances,
                   int width_px) {
    if (width_px < 0) throw std::invalid_argument("band width must be >= 0");
    if (contour.empty() || !distances.has_value()) {
        return BandMask(width_px, ScalarField(contour.width(), contour.height(), kInf));
    }
    if (distances->width() != contour.width() || distances->height() != contour.height()) {
        throw std::invalid_argument("distance field does not match contour dimensions");
    }
    return BandMask(width_px, *distances);
}

// ---------------------------------------------------------------------------
// Augmentation
// ---------------------------------------------------------------------------

CropFlip sample_crop_flip(Rng& rng, int width, int height, int crop, double flip_prob) {
    if (crop < 1 || crop > width || crop > height) {
        throw std::invalid_argument("crop size larger than image");
    }
    if (flip_prob < 0.0 || flip_prob > 1.0) {
        throw std::invalid_argument("flip probability must be in [0,1]");
    }
    CropFlip t;
    t.size = crop;
    t.row0 = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(height - crop) + 1));
    t.col0 = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(width - crop) + 1));
    t.flip = rng.uniform01() < flip_prob;
    return t;
}

namespace {

// Source column for output column c under the transform.
inline int src_col(const CropFlip& t, int c) {
    return t.col0 + (t.flip ? t.size - 1 - c : c);
}

}  // namespace

TensorField apply_crop_flip(const TensorField& field, const CropFlip& t) {
    TensorField out(t.size, t.size, field.channels());
    for (int ch = 0; ch < field.channels(); ++ch) {
        for (int r = 0; r < t.size; ++r) {
            for (int c = 0; c < t.size; ++c) {
                out.at(ch, r, c) = field.at(ch, t.row0 + r, src_col(t, c));
            }
        }
    }
    return out;
}

ScalarField apply_crop_flip(const ScalarField& field, const CropFlip& t) {
    ScalarField out(t.size, t.size);
    for (int r = 0; r < t.size; ++r) {
        for (int c = 0; c < t.size; ++c) {
            out.at(r, c) = field.at(t.row0 + r, src_col(t, c));
        }
    }
    return out;
}

BinaryMask apply_crop_flip(const BinaryMask& mask, const CropFlip& t) {
    BinaryMask out(t.size, t.size);
    for (int r = 0; r < t.size; ++r) {
        for (int c = 0; c < t.size; ++c) {
            out.set(r, c, mask.is_fg(t.row0 + r, src_col(t, c)));
        }
    }
    return out;
}

Field3 apply_crop_flip(const Field3& field, const CropFlip& t) {
    Field3 out(t.size, t.size);
    for (int r = 0; r < t.size; ++r) {
        for (int c = 0; c < t.size; ++c) {
            out.set_vec(r, c, field.vec(t.row0 + r, src_col(t, c)));
        }
    }
    return out;
}

std::pair<TensorField, BinaryMask> augment_pair(const TensorField& image,
                                                const BinaryMask& labels, int crop,
                                                double flip_prob, Rng& rng) {
    if (image.width() != labels.width() || image.height() != labels.height()) {
        throw std::invalid_argument("image and labels dimensions differ");
    }
    const CropFlip t = sample_crop_flip(rng, image.width(), image.height(), crop, flip_prob);
    return {apply_crop_flip(image, t), apply_crop_flip(labels, t)};
}

std::pair<TensorField, Field3> augment_pair(const TensorField& image, const Field3& labels,
                                            int crop, double flip_prob, Rng& rng) {
    if (image.width() != labels.width() || image.height() != labels.height()) {
        throw std::invalid_argument("image and labels dimensions differ");
    }
    const CropFlip t = sample_crop_flip(rng, image.width(), image.height(), crop, flip_prob);
    return {apply_crop_flip(image, t), apply_crop_flip(labels, t)};
}

TensorField assemble_input(const TensorField& rgb, const ScalarField& mean_mask) {
    if (rgb.channels() != 3) throw std::invalid_argument("expected a 3-channel RGB tensor");
    if (rgb.width() != mean_mask.width() || rgb.height() != mean_mask.height()) {
        throw std::invalid_argument("RGB and mean mask dimensions differ");
    }
    const int w = rgb.width(), h = rgb.height();
    TensorField out(w, h, 6);
    for (int ch = 0; ch < 3; ++ch) {
        for (int r = 0; r < h; ++r) {
            for (int c = 0; c < w; ++c) out.at(ch, r, c) = rgb.at(ch, r, c);
        }
    }
    for (int r = 0; r < h; ++r) {
        const float y = h > 1 ? static_cast<float>(r) / (h - 1) : 0.0f;
        for (int c = 0; c < w; ++c) {
            const float x = w > 1 ? static_cast<float>(c) / (w - 1) : 0.0f;
            out.at(3, r, c) = x;
            out.at(4, r, c) = y;
            out.at(5, r, c) = static_cast<float>(mean_mask.at(r, c));
        }
    }
    return out;
}

}  // namespace bsseg
