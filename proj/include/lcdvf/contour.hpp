#pragma once

#include <span>
#include <vector>

#include "lcdvf/types.hpp"

namespace lcdvf {

// Closed polygon of L >= 3 sub-pixel nodes. The last node connects back to
// the first. Construction normalizes orientation to positive signed area in
// (u, v) coordinates, so the outward normal of segment (a -> b) is
// (b.v - a.v, -(b.u - a.u)).
class Contour {
 public:
  explicit Contour(std::vector<Point> nodes);

  std::size_t size() const { return nodes_.size(); }
  const Point& operator[](std::size_t i) const { return nodes_[i]; }
  std::span<const Point> nodes() const { return nodes_; }

  // Cyclic access, any integer offset.
  const Point& at_cyclic(long i) const;

  double signed_area() const;
  double perimeter() const;

  // Copy with every node clamped into [0, width-1] x [0, height-1].
  Contour clamped(int width, int height) const;

  // Copy resampled to `count` nodes evenly spaced in arc length, starting at
  // node 0.
  Contour resampled(std::size_t count) const;

  // Cyclic rotation: node i of the result is node (i + shift) of this.
  Contour rotated(std::size_t shift) const;

  friend bool operator==(const Contour&, const Contour&) = default;

 private:
  std::vector<Point> nodes_;
};

double signed_area(std::span<const Point> polygon);

}  // namespace lcdvf
