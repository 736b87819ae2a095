#include "bsseg/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace bsseg {

ScalarField compute_mean_mask(const std::vector<BinaryMask>& masks) {
    if (masks.empty()) throw std::invalid_argument("mean mask needs at least one mask");
    const int w = masks.front().width(), h = masks.front().height();
    ScalarField mean(w, h, 0.0);
    for (const BinaryMask& m : masks) {
        if (m.width() != w || m.height() != h) {
            throw std::invalid_argument("masks have mismatched dimensions");
        }
        for (int r = 0; r < h; ++r) {
            for (int c = 0; c < w; ++c) {
                if (m.is_fg(r, c)) mean.at(r, c) += 1.0;
            }
        }
    }
    const double inv = 1.0 / static_cast<double>(masks.size());
    for (double& v : mean.data()) v *= inv;
    return mean;
}

SoftLabelField individual_kernel(const BinaryMask& mask, int band_width, NormMode mode) {
    if (band_width < 0) throw std::invalid_argument("band width must be >= 0");
    const int w = mask.width(), h = mask.height();
    SoftLabelField labels(w, h);

    const ContourSet contour = extract_contour(mask);
    const std::optional<ScalarField> dist = distance_transform(contour);
    const BandMask band = make_band(contour, dist, band_width);

    // Sum mode divides each band distance by the total over the band; a
    // band whose distances are all zero (width 0) degenerates to one-hot.
    double denom = 0.0;
    if (mode == NormMode::Sum) {
        for (int r = 0; r < h; ++r) {
            for (int c = 0; c < w; ++c) {
                if (band.contains(r, c)) denom += band.distance(r, c);
            }
        }
    } else {
        denom = band.radius();
    }

    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const bool fg = mask.is_fg(r, c);
            if (!band.contains(r, c)) {
                labels.set_vec(r, c, fg ? std::array<double, 3>{1.0, 0.0, 0.0}
                                        : std::array<double, 3>{0.0, 0.0, 1.0});
                continue;
            }
            double l_bdry = denom > 0.0 ? band.distance(r, c) / denom : 0.0;
            l_bdry = std::min(l_bdry, 1.0);
            const double side = 1.0 - l_bdry;
            labels.set_vec(r, c, fg ? std::array<double, 3>{side, l_bdry, 0.0}
                                    : std::array<double, 3>{0.0, l_bdry, side});
        }
    }
    return labels;
}

GlobalKernel global_kernel(const ScalarField& mean_mask, double a, double b,
                           GlobalKernelMode mode) {
    if (!(a >= 0.0) || !(a <= b)) {
        throw std::invalid_argument("global kernel range requires 0 <= a <= b");
    }
    GlobalKernel kernel{ScalarField(mean_mask.width(), mean_mask.height()), a, b};
    for (size_t i = 0; i < mean_mask.data().size(); ++i) {
        const double m = mean_mask.data()[i];
        if (!(m >= 0.0 && m <= 1.0)) {
            throw std::invalid_argument("mean mask values must lie in [0,1]");
        }
        const double certainty = std::abs(m - 0.5) / 0.5;  // 0 at m=0.5, 1 at m in {0,1}
        kernel.weights.data()[i] = mode == GlobalKernelMode::Literal
                                       ? b - (1.0 - certainty) * (b - a)
                                       : a + (1.0 - certainty) * (b - a);
    }
    return kernel;
}

}  // namespace bsseg
