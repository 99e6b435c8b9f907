#include "lcdvf/reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lcdvf/field_ops.hpp"

namespace lcdvf::reference {

bool point_in_polygon(std::span<const Point> polygon, Point p) {
  bool inside = false;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = polygon[i];
    const Point& b = polygon[(i + 1) % n];
    if ((a.v > p.v) != (b.v > p.v)) {
      const double x = a.u + (p.v - a.v) * (b.u - a.u) / (b.v - a.v);
      if (x > p.u) inside = !inside;
    }
  }
  return inside;
}

BinaryMask rasterize_brute(const Contour& contour, int width, int height) {
  BinaryMask out(width, height, 0);
  if (std::abs(contour.signed_area()) < kDegenerateArea) return out;
  for (int v = 0; v < height; ++v) {
    for (int u = 0; u < width; ++u) {
      out(u, v) = point_in_polygon(contour.nodes(), {double(u), double(v)}) ? 1 : 0;
    }
  }
  return out;
}

namespace {

bool contains_all(const Circle& c, std::span<const Point> points) {
  for (const Point& p : points) {
    if (norm(p - c.center) > c.radius + 1e-9) return false;
  }
  return true;
}

}  // namespace

Circle enclosing_circle_brute(std::span<const Point> points) {
  if (points.size() == 1) return {points[0], 0.0};
  Circle best{{0, 0}, std::numeric_limits<double>::infinity()};
  const std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Circle c{0.5 * (points[i] + points[j]), 0.5 * norm(points[i] - points[j])};
      if (c.radius < best.radius && contains_all(c, points)) best = c;
      for (std::size_t k = j + 1; k < n; ++k) {
        const Point a = points[i], b = points[j], q = points[k];
        const double d = 2.0 * ((b.u - a.u) * (q.v - a.v) - (b.v - a.v) * (q.u - a.u));
        if (std::abs(d) < 1e-12) continue;
        const double b2 = (b.u - a.u) * (b.u - a.u) + (b.v - a.v) * (b.v - a.v);
        const double q2 = (q.u - a.u) * (q.u - a.u) + (q.v - a.v) * (q.v - a.v);
        const Point center{a.u + ((q.v - a.v) * b2 - (b.v - a.v) * q2) / d,
                           a.v + ((b.u - a.u) * q2 - (q.u - a.u) * b2) / d};
        const Circle cc{center, norm(a - center)};
        if (cc.radius < best.radius && contains_all(cc, points)) best = cc;
      }
    }
  }
  return best;
}

std::vector<Point> convex_hull(std::vector<Point> points) {
  std::sort(points.begin(), points.end(), [](Point a, Point b) { return a.u < b.u || (a.u == b.u && a.v < b.v); });
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() < 3) return points;
  auto cross = [](Point o, Point a, Point b) { return (a.u - o.u) * (b.v - o.v) - (a.v - o.v) * (b.u - o.u); };
  std::vector<Point> hull(2 * points.size());
  std::size_t k = 0;
  for (const Point& p : points) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = points.size() - 1, t = k + 1; i > 0; --i) {
    const Point& p = points[i - 1];
    while (k >= t && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  return hull;
}

VectorField central_gradient_serial(const ScalarField& f) {
  const int w = f.width();
  const int h = f.height();
  VectorField g(w, h);
  for (int v = 0; v < h; ++v) {
    for (int u = 0; u < w; ++u) {
      g.u(u, v) = u == 0 ? f(1, v) - f(0, v) : u == w - 1 ? f(w - 1, v) - f(w - 2, v) : 0.5 * (f(u + 1, v) - f(u - 1, v));
      g.v(u, v) = v == 0 ? f(u, 1) - f(u, 0) : v == h - 1 ? f(u, h - 1) - f(u, h - 2) : 0.5 * (f(u, v + 1) - f(u, v - 1));
    }
  }
  return g;
}

VectorField lcdvf_serial(const ScalarField& dt) {
  VectorField g = central_gradient_serial(dt);
  for (std::size_t i = 0; i < dt.size(); ++i) {
    g.u.data()[i] = -g.u.data()[i] * dt.data()[i];
    g.v.data()[i] = -g.v.data()[i] * dt.data()[i];
  }
  return g;
}

}  // namespace lcdvf::reference
