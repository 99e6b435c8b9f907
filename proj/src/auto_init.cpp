#include "lcdvf/auto_init.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "lcdvf/distance_transform.hpp"
#include "lcdvf/field_ops.hpp"

namespace lcdvf {

std::string_view to_string(InitMode mode) {
  return mode == InitMode::Inscribed ? "inscribed" : "circumscribed";
}

namespace {

void require_foreground(const BinaryMask& mask) {
  if (count_foreground(mask) == 0) throw EmptyMaskError("mask has no foreground pixels");
}

bool covers(const Circle& c, Point p) {
  return norm(p - c.center) <= c.radius * (1.0 + 1e-12) + 1e-12;
}

Circle from_two(Point a, Point b) {
  const Point mid = 0.5 * (a + b);
  return {mid, 0.5 * norm(b - a)};
}

Circle from_three(Point a, Point b, Point c) {
  const double bx = b.u - a.u, by = b.v - a.v;
  const double cx = c.u - a.u, cy = c.v - a.v;
  const double d = 2.0 * (bx * cy - by * cx);
  if (std::abs(d) < 1e-12) {
    // Collinear: the farthest pair spans the other point.
    Circle best = from_two(a, b);
    for (const Circle& cand : {from_two(a, c), from_two(b, c)}) {
      if (cand.radius > best.radius) best = cand;
    }
    return best;
  }
  const double b2 = bx * bx + by * by;
  const double c2 = cx * cx + cy * cy;
  const Point center{a.u + (cy * b2 - by * c2) / d, a.v + (bx * c2 - cx * b2) / d};
  return {center, std::max({norm(a - center), norm(b - center), norm(c - center)})};
}

}  // namespace

Circle minimal_enclosing_circle(std::span<const Point> points) {
  if (points.empty()) throw EmptyMaskError("no points to enclose");
  std::vector<Point> p(points.begin(), points.end());
  std::mt19937_64 rng(0x5eed);
  std::shuffle(p.begin(), p.end(), rng);

  Circle c{p[0], 0.0};
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (covers(c, p[i])) continue;
    c = {p[i], 0.0};
    for (std::size_t j = 0; j < i; ++j) {
      if (covers(c, p[j])) continue;
      c = from_two(p[i], p[j]);
      for (std::size_t k = 0; k < j; ++k) {
        if (covers(c, p[k])) continue;
        c = from_three(p[i], p[j], p[k]);
      }
    }
  }
  return c;
}

Circle inscribed_circle(const BinaryMask& mask) {
  require_foreground(mask);
  const DistanceField inside = interior_distance(mask);
  Circle best{{0.0, 0.0}, -1.0};
  for (int v = 0; v < mask.height(); ++v) {
    for (int u = 0; u < mask.width(); ++u) {
      if (mask(u, v) && inside(u, v) > best.radius) best = {{double(u), double(v)}, inside(u, v)};
    }
  }
  return best;
}

Circle circumscribed_circle(const BinaryMask& mask) {
  require_foreground(mask);
  std::vector<Point> points;
  for (const Pixel& px : boundary_pixels(mask)) points.push_back({double(px.u), double(px.v)});
  Circle c = minimal_enclosing_circle(points);
  c.radius += 0.5;
  return c;
}

Circle iterative_circle_fit(const BinaryMask& mask, InitMode mode) {
  Circle c = mode == InitMode::Inscribed ? inscribed_circle(mask) : circumscribed_circle(mask);
  const int w = mask.width();
  const int h = mask.height();
  const double max_radius = std::hypot(w, h);

  // Returns the symmetric-difference size, or -1 if the constraint fails.
  auto score = [&](const Circle& cand) -> long {
    if (mode == InitMode::Inscribed) {
      // Pixel centers just outside the frame are background too.
      const double fu = std::abs(cand.center.u - std::round(cand.center.u));
      const double fv = std::abs(cand.center.v - std::round(cand.center.v));
      const double to_frame = std::min({std::hypot(cand.center.u + 1.0, fv), std::hypot(w - cand.center.u, fv),
                                        std::hypot(cand.center.v + 1.0, fu), std::hypot(h - cand.center.v, fu)});
      if (to_frame < cand.radius) return -1;
    }
    long diff = 0;
    const BinaryMask disc = raster_circle(cand, w, h);
    for (std::size_t i = 0; i < disc.size(); ++i) {
      const bool in_disc = disc.data()[i] != 0;
      const bool in_mask = mask.data()[i] != 0;
      if (in_disc == in_mask) continue;
      if (mode == InitMode::Inscribed && in_disc) return -1;
      if (mode == InitMode::Circumscribed && in_mask) return -1;
      ++diff;
    }
    return diff;
  };

  long best = score(c);
  if (best < 0) return c;  // exact circle sits on a constraint tie; keep it
  bool improved = true;
  while (improved) {
    improved = false;
    for (int param = 0; param < 3; ++param) {
      for (double step : {0.5, -0.5}) {
        Circle cand = c;
        if (param == 0) cand.center.u += step;
        if (param == 1) cand.center.v += step;
        if (param == 2) cand.radius += step;
        if (cand.radius < 0.5 || cand.radius > max_radius) continue;
        if (cand.center.u < 0 || cand.center.v < 0 || cand.center.u > w - 1 || cand.center.v > h - 1) continue;
        const long s = score(cand);
        if (s >= 0 && s < best) {
          best = s;
          c = cand;
          improved = true;
        }
      }
    }
  }
  return c;
}

Contour circle_to_contour(const Circle& circle, std::size_t node_count, int width, int height) {
  if (node_count < 3) throw Error("circle_to_contour needs at least 3 nodes");
  std::vector<Point> nodes(node_count);
  for (std::size_t s = 0; s < node_count; ++s) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(s) / static_cast<double>(node_count);
    nodes[s] = {circle.center.u + circle.radius * std::cos(angle), circle.center.v + circle.radius * std::sin(angle)};
  }
  return Contour(std::move(nodes)).clamped(width, height);
}

}  // namespace lcdvf
