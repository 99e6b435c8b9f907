#include "lcdvf/contour.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lcdvf {

double norm(Point p) { return std::hypot(p.u, p.v); }

std::size_t count_foreground(const BinaryMask& mask) {
  return static_cast<std::size_t>(std::count_if(mask.data().begin(), mask.data().end(),
                                                [](std::uint8_t b) { return b != 0; }));
}

double signed_area(std::span<const Point> polygon) {
  const std::size_t n = polygon.size();
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = polygon[i];
    const Point& b = polygon[(i + 1) % n];
    twice += a.u * b.v - b.u * a.v;
  }
  return 0.5 * twice;
}

Contour::Contour(std::vector<Point> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 3) {
    throw Error("contour needs at least 3 nodes, got " + std::to_string(nodes_.size()));
  }
  for (const Point& p : nodes_) {
    if (!std::isfinite(p.u) || !std::isfinite(p.v)) {
      throw NumericError("contour node is not finite");
    }
  }
  if (lcdvf::signed_area(nodes_) < 0.0) {
    std::reverse(nodes_.begin(), nodes_.end());
  }
}

const Point& Contour::at_cyclic(long i) const {
  const long n = static_cast<long>(nodes_.size());
  long k = i % n;
  if (k < 0) k += n;
  return nodes_[static_cast<std::size_t>(k)];
}

double Contour::signed_area() const { return lcdvf::signed_area(nodes_); }

double Contour::perimeter() const {
  double total = 0.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    total += norm(at_cyclic(static_cast<long>(i) + 1) - nodes_[i]);
  }
  return total;
}

Contour Contour::clamped(int width, int height) const {
  std::vector<Point> out = nodes_;
  const double umax = width - 1;
  const double vmax = height - 1;
  for (Point& p : out) {
    p.u = std::clamp(p.u, 0.0, umax);
    p.v = std::clamp(p.v, 0.0, vmax);
  }
  return Contour(std::move(out));
}

Contour Contour::resampled(std::size_t count) const {
  if (count < 3) throw Error("resampling needs at least 3 nodes");
  const std::size_t n = nodes_.size();
  std::vector<double> cumulative(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    cumulative[i + 1] = cumulative[i] + norm(nodes_[(i + 1) % n] - nodes_[i]);
  }
  const double total = cumulative[n];
  if (total <= 0.0) return *this;

  std::vector<Point> out;
  out.reserve(count);
  std::size_t seg = 0;
  for (std::size_t k = 0; k < count; ++k) {
    const double target = total * static_cast<double>(k) / static_cast<double>(count);
    while (seg + 1 < n && cumulative[seg + 1] <= target) ++seg;
    const double len = cumulative[seg + 1] - cumulative[seg];
    const double t = len > 0.0 ? (target - cumulative[seg]) / len : 0.0;
    const Point& a = nodes_[seg];
    const Point& b = nodes_[(seg + 1) % n];
    out.push_back(a + t * (b - a));
  }
  return Contour(std::move(out));
}

Contour Contour::rotated(std::size_t shift) const {
  std::vector<Point> out(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    out[i] = nodes_[(i + shift) % nodes_.size()];
  }
  return Contour(std::move(out));
}

}  // namespace lcdvf
