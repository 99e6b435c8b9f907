#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "lcdvf/contour.hpp"
#include "lcdvf/types.hpp"

namespace lcdvf::testing {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline int uniform_int(std::mt19937_64& g, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(g); }

// Union of a few random disks and boxes. Never empty.
inline BinaryMask random_blob(std::mt19937_64& g, int w, int h, int parts = 4) {
  BinaryMask m(w, h, 0);
  for (int k = 0; k < parts; ++k) {
    const double cu = uniform(g, 0.2 * w, 0.8 * w);
    const double cv = uniform(g, 0.2 * h, 0.8 * h);
    const double r = uniform(g, 2.0, 0.25 * std::min(w, h));
    const bool box = uniform_int(g, 0, 1) == 1;
    for (int v = 0; v < h; ++v) {
      for (int u = 0; u < w; ++u) {
        const double du = u - cu, dv = v - cv;
        const bool in = box ? std::abs(du) <= r && std::abs(dv) <= 0.6 * r : du * du + dv * dv <= r * r;
        if (in) m(u, v) = 1;
      }
    }
  }
  return m;
}

// Salt-and-pepper mask with density p; at least one pixel set and one clear.
inline BinaryMask random_noise_mask(std::mt19937_64& g, int w, int h, double p) {
  BinaryMask m(w, h, 0);
  std::bernoulli_distribution bit(p);
  for (auto& x : m.data()) x = bit(g) ? 1 : 0;
  m(0, 0) = 1;
  m(w - 1, h - 1) = 0;
  return m;
}

// Arbitrary, possibly self-intersecting polygon. With `lattice` the vertices
// sit on integer coordinates so pixel-center ties actually occur.
inline Contour random_polygon(std::mt19937_64& g, int w, int h, bool lattice) {
  const int n = uniform_int(g, 3, 12);
  std::vector<Point> pts;
  for (int i = 0; i < n; ++i) {
    Point p{uniform(g, -2.0, w + 1.0), uniform(g, -2.0, h + 1.0)};
    if (lattice) p = {std::round(p.u), std::round(p.v)};
    pts.push_back(p);
  }
  if (std::abs(signed_area(pts)) < 1e-3) pts.push_back({0.5 * w, 0.5 * h + 0.37});
  return Contour(std::move(pts));
}

// Star-shaped contour around a center with random radii.
inline Contour random_star_contour(std::mt19937_64& g, Point c, double r_lo, double r_hi, int n) {
  std::vector<Point> pts;
  for (int i = 0; i < n; ++i) {
    const double a = 2.0 * std::numbers::pi * i / n;
    const double r = uniform(g, r_lo, r_hi);
    pts.push_back({c.u + r * std::cos(a), c.v + r * std::sin(a)});
  }
  return Contour(std::move(pts));
}

inline Contour square(double u0, double v0, double side) {
  return Contour({{u0, v0}, {u0 + side, v0}, {u0 + side, v0 + side}, {u0, v0 + side}});
}

}  // namespace lcdvf::testing
