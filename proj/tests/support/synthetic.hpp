#pragma once

#include <cstdint>
#include <vector>

#include "bsseg/net.hpp"
#include "bsseg/raster.hpp"
#include "bsseg/rng.hpp"

namespace bsseg::testsupport {

// Portrait-like silhouette: a head disk over a body ellipse, with the body
// clipped by the bottom edge so the foreground touches the image border.
BinaryMask portrait_mask(Rng& rng, int size);

// Noisy rendering of a mask: per-channel intensity follows a blurred copy
// of the silhouette. Uniform noise of amplitude `noise` concentrates in
// the blur zone around the contour (the interior stays nearly clean), so
// boundary colors are ambiguous. More blur passes widen that zone.
TensorField portrait_image(const BinaryMask& mask, Rng& rng, double noise, int blur_passes = 2);

// iid coin-flip mask; may be degenerate (all one class).
BinaryMask random_mask(Rng& rng, int width, int height);

// Random rectangle-union mask guaranteed to contain both classes.
BinaryMask random_blob_mask(Rng& rng, int width, int height);

struct SyntheticSuite {
    std::vector<TrainSample> samples;       // training renderings
    std::vector<TensorField> heldout_images;  // same masks, fresh noise
};

SyntheticSuite make_portrait_suite(std::uint64_t seed, int count, int size, double noise,
                                   int blur_passes = 2);

}  // namespace bsseg::testsupport
