#pragma once

#include <span>
#include <string_view>

#include "lcdvf/contour.hpp"
#include "lcdvf/types.hpp"

namespace lcdvf {

enum class InitMode { Inscribed, Circumscribed };

std::string_view to_string(InitMode mode);

// Largest circle inside the foreground: center at the argmax of the interior
// distance transform (ties: smallest row, then column), radius = that
// distance. Out-of-frame pixels count as background.
Circle inscribed_circle(const BinaryMask& mask);

// Minimal enclosing circle of the foreground pixel centers, radius padded by
// 0.5 px so the pixel squares' centers are strictly covered.
Circle circumscribed_circle(const BinaryMask& mask);

// Minimal enclosing circle of a point set (randomized incremental, fixed
// shuffle seed so results are deterministic).
Circle minimal_enclosing_circle(std::span<const Point> points);

// Coordinate descent on (center u, center v, radius) in 0.5 px steps
// minimizing |raster_circle(c) xor mask|, starting from the exact circle and
// keeping raster(c) within the mask (inscribed) or the mask within raster(c)
// (circumscribed).
Circle iterative_circle_fit(const BinaryMask& mask, InitMode mode);

// L nodes at angles 2*pi*s/L, clamped to the frame.
Contour circle_to_contour(const Circle& circle, std::size_t node_count, int width, int height);

}  // namespace lcdvf
