#pragma once

#include <vector>

#include "bsseg/geometry.hpp"
#include "bsseg/raster.hpp"

namespace bsseg {

// Per-pixel soft label [l_fg, l_bdry, l_bg]. Components are in [0,1] and
// sum to 1; pixels outside the boundary band are one-hot; l_fg and l_bg
// are never both nonzero.
using SoftLabelField = Field3;

// How the boundary-band distance is normalized into l_bdry:
//   Sum: divide by the sum of distances over all band pixels, so the
//        boundary labels form a distribution over the band.
//   Max: divide by the band radius, keeping labels O(1) regardless of
//        image size. Default.
enum class NormMode { Sum, Max };

// Which end of [a,b] the uncertain (mean mask ~ 0.5) locations receive:
//   Literal: K = b - (1 - |m-0.5|/0.5) * (b-a); uncertain locations get a.
//   Intent:  K = a + (1 - |m-0.5|/0.5) * (b-a); uncertain locations get b.
enum class GlobalKernelMode { Literal, Intent };

// Position-prior loss weights derived from the mean mask; every value
// lies in [a, b].
struct GlobalKernel {
    ScalarField weights;
    double a = 0.0;
    double b = 0.0;
};

// Pixelwise average of the masks as {fg=1, bg=0}, accumulated in double.
ScalarField compute_mean_mask(const std::vector<BinaryMask>& masks);

// Soft-label field for one mask: contour -> exact distance transform ->
// band of total width `band_width` -> per-pixel labels. Outside the band
// (or everywhere, for a mask without a contour) labels are one-hot.
SoftLabelField individual_kernel(const BinaryMask& mask, int band_width,
                                 NormMode mode = NormMode::Max);

GlobalKernel global_kernel(const ScalarField& mean_mask, double a, double b,
                           GlobalKernelMode mode = GlobalKernelMode::Literal);

}  // namespace bsseg
