#pragma once

// Serial reference kernels. Not used by the engine; they back the oracle
// tests and the serial side of the kernel benchmark.

#include <span>
#include <vector>

#include "lcdvf/contour.hpp"
#include "lcdvf/types.hpp"

namespace lcdvf::reference {

// Even-odd crossing test evaluated independently at every pixel center.
BinaryMask rasterize_brute(const Contour& contour, int width, int height);

// Crossing-number point-in-polygon test.
bool point_in_polygon(std::span<const Point> polygon, Point p);

// Smallest circle among all 2- and 3-point candidate circles of `points`
// that contains every point. O(n^4); meant for small hulls.
Circle enclosing_circle_brute(std::span<const Point> points);

// Andrew's monotone chain; returns hull vertices counterclockwise.
std::vector<Point> convex_hull(std::vector<Point> points);

// Single-threaded central gradient and LCDVF, same arithmetic as the
// parallel kernels.
VectorField central_gradient_serial(const ScalarField& field);
VectorField lcdvf_serial(const ScalarField& dt);

}  // namespace lcdvf::reference
