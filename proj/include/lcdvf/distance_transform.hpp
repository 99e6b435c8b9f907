#pragma once

#include <span>

#include "lcdvf/types.hpp"

namespace lcdvf {

// Euclidean distance, in pixels, from each pixel center to the nearest seed
// pixel center. Zero exactly on the seeds; 1-Lipschitz on the grid.
using DistanceField = ScalarField;

// Exhaustive O(N * |boundary|) scan. Reference implementation.
DistanceField edt_brute(std::span<const Pixel> boundary, int width, int height);

// Separable exact EDT (lower envelope of parabolas per column, then per row),
// parallel over columns and rows. Agrees with edt_brute to rounding: squared
// distances are integers and both take one sqrt of the same value.
DistanceField edt_exact(std::span<const Pixel> boundary, int width, int height);

// Unsigned distance to the inner boundary of the mask.
DistanceField mask_to_dt(const BinaryMask& mask);

// For foreground pixels: distance to the nearest background pixel center,
// where everything outside the frame counts as background. Zero on
// background pixels.
DistanceField interior_distance(const BinaryMask& mask);

}  // namespace lcdvf
