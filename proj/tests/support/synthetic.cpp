#include "support/synthetic.hpp"

#include <algorithm>
#include <cmath>

namespace bsseg::testsupport {

BinaryMask portrait_mask(Rng& rng, int size) {
    BinaryMask mask(size, size);
    const double cx = size * (0.5 + 0.1 * (rng.uniform01() - 0.5));
    const double head_cy = size * (0.30 + 0.06 * (rng.uniform01() - 0.5));
    const double head_r = size * (0.14 + 0.05 * rng.uniform01());
    const double body_cy = size * (0.85 + 0.06 * rng.uniform01());
    const double body_rx = size * (0.24 + 0.08 * rng.uniform01());
    const double body_ry = size * (0.30 + 0.08 * rng.uniform01());

    for (int r = 0; r < size; ++r) {
        for (int c = 0; c < size; ++c) {
            const double dh = ((r - head_cy) * (r - head_cy) + (c - cx) * (c - cx)) /
                              (head_r * head_r);
            const double db = ((r - body_cy) * (r - body_cy)) / (body_ry * body_ry) +
                              ((c - cx) * (c - cx)) / (body_rx * body_rx);
            mask.set(r, c, dh <= 1.0 || db <= 1.0);
        }
    }
    return mask;
}

namespace {

ScalarField blurred_silhouette(const BinaryMask& mask, int passes) {
    const int h = mask.height(), w = mask.width();
    ScalarField soft(w, h);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) soft.at(r, c) = mask.is_fg(r, c) ? 1.0 : 0.0;
    }
    for (int pass = 0; pass < passes; ++pass) {
        ScalarField next(w, h);
        for (int r = 0; r < h; ++r) {
            for (int c = 0; c < w; ++c) {
                double sum = 0.0;
                int n = 0;
                for (int dr = -1; dr <= 1; ++dr) {
                    for (int dc = -1; dc <= 1; ++dc) {
                        const int rr = r + dr, cc = c + dc;
                        if (rr < 0 || rr >= h || cc < 0 || cc >= w) continue;
                        sum += soft.at(rr, cc);
                        ++n;
                    }
                }
                next.at(r, c) = sum / n;
            }
        }
        soft = next;
    }
    return soft;
}

}  // namespace

TensorField portrait_image(const BinaryMask& mask, Rng& rng, double noise, int blur_passes) {
    const ScalarField soft = blurred_silhouette(mask, blur_passes);
    const int h = mask.height(), w = mask.width();
    TensorField img(w, h, 3);
    const double gain[3] = {1.0, 0.95, 0.9};
    for (int ch = 0; ch < 3; ++ch) {
        for (int r = 0; r < h; ++r) {
            for (int c = 0; c < w; ++c) {
                const double s = soft.at(r, c);
                // noise concentrates in the blur zone around the contour,
                // where 4*s*(1-s) peaks; the interior stays nearly clean
                const double amp = 0.03 + noise * 4.0 * s * (1.0 - s);
                const double v = gain[ch] * (0.25 + 0.5 * s) + rng.uniform(-amp, amp);
                img.at(ch, r, c) = static_cast<float>(std::clamp(v, 0.0, 1.0));
            }
        }
    }
    return img;
}

BinaryMask random_mask(Rng& rng, int width, int height) {
    BinaryMask mask(width, height);
    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) mask.set(r, c, rng.uniform_below(2) == 1);
    }
    return mask;
}

BinaryMask random_blob_mask(Rng& rng, int width, int height) {
    BinaryMask mask(width, height);
    const int rects = 1 + static_cast<int>(rng.uniform_below(3));
    for (int k = 0; k < rects; ++k) {
        const int r0 = static_cast<int>(rng.uniform_below(height));
        const int c0 = static_cast<int>(rng.uniform_below(width));
        const int rh = 1 + static_cast<int>(rng.uniform_below(std::max(1, height / 2)));
        const int rw = 1 + static_cast<int>(rng.uniform_below(std::max(1, width / 2)));
        for (int r = r0; r < std::min(height, r0 + rh); ++r) {
            for (int c = c0; c < std::min(width, c0 + rw); ++c) mask.set(r, c, true);
        }
    }
    // both classes must be present so the contour is never empty
    mask.set(height - 1, width - 1, true);
    mask.set(0, 0, false);
    return mask;
}

SyntheticSuite make_portrait_suite(std::uint64_t seed, int count, int size, double noise,
                                   int blur_passes) {
    Rng rng(seed);
    SyntheticSuite suite;
    for (int i = 0; i < count; ++i) {
        BinaryMask mask = portrait_mask(rng, size);
        TensorField train_img = portrait_image(mask, rng, noise, blur_passes);
        TensorField heldout_img = portrait_image(mask, rng, noise, blur_passes);
        const HairClass attr = i % 2 == 0 ? HairClass::LongHair : HairClass::ShortHair;
        suite.samples.push_back({std::move(train_img), std::move(mask), attr});
        suite.heldout_images.push_back(std::move(heldout_img));
    }
    return suite;
}

}  // namespace bsseg::testsupport
