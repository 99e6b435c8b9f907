#pragma once

#include <vector>

#include "lcdvf/contour.hpp"
#include "lcdvf/types.hpp"

namespace lcdvf {

// Polygons with |signed area| below this are treated as degenerate.
inline constexpr double kDegenerateArea = 1e-6;

// Bilinear interpolation at a point inside [0, w-1] x [0, h-1]. Throws
// NumericError for non-finite points; points outside the frame are clamped.
double bilinear_sample(const ScalarField& field, Point p);
Point bilinear_sample(const VectorField& field, Point p);

// Central differences inside, one-sided differences on the border.
VectorField central_gradient(const ScalarField& field);

struct Raster {
  BinaryMask mask;
  bool degenerate = false;
};

// Even-odd pixel-center containment. A pixel center is inside when the
// number of polygon crossings of the row strictly to its right is odd; an
// edge crosses row v when exactly one endpoint has coordinate > v. This is
// the half-open top-left convention.
Raster rasterize(const Contour& contour, int width, int height);

// Foreground pixels with a 4-neighbour that is background or outside the
// frame, in row-major order.
std::vector<Pixel> boundary_pixels(const BinaryMask& mask);

// Pixels whose center lies strictly inside the circle.
BinaryMask raster_circle(const Circle& circle, int width, int height);

}  // namespace lcdvf
