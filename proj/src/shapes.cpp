#include "lcdvf/shapes.hpp"

#include <cmath>
#include <numbers>

#include "lcdvf/contour.hpp"
#include "lcdvf/field_ops.hpp"

namespace lcdvf::shapes {

namespace {

template <typename Inside>
BinaryMask paint(int size, Inside inside) {
  BinaryMask m(size, size, 0);
  for (int v = 0; v < size; ++v) {
    for (int u = 0; u < size; ++u) m(u, v) = inside(static_cast<double>(u), static_cast<double>(v)) ? 1 : 0;
  }
  return m;
}

}  // namespace

BinaryMask disk(int size) {
  const double c = 0.5 * size;
  const double r = 0.23 * size;
  return paint(size, [&](double u, double v) { return std::hypot(u - c, v - c) <= r; });
}

BinaryMask rectangle(int size) {
  const double c = 0.5 * size;
  const double hw = 0.28 * size;
  const double hh = 0.19 * size;
  return paint(size, [&](double u, double v) { return std::abs(u - c) <= hw && std::abs(v - c) <= hh; });
}

BinaryMask star(int size) {
  const double c = 0.5 * size;
  const double outer = 0.40 * size;
  const double inner = 0.24 * size;
  std::vector<Point> pts;
  for (int k = 0; k < 10; ++k) {
    const double angle = -0.5 * std::numbers::pi + k * std::numbers::pi / 5.0;
    const double r = k % 2 == 0 ? outer : inner;
    pts.push_back({c + r * std::cos(angle), c + r * std::sin(angle)});
  }
  return rasterize(Contour(std::move(pts)), size, size).mask;
}

BinaryMask u_shape(int size) {
  const double s = size / 64.0;
  // Outer block and the cavity opening at the top, in 64-px units.
  const double left = 12 * s, right = 52 * s, top = 14 * s, bottom = 50 * s;
  const double cav_left = 26 * s, cav_right = 38 * s, cav_bottom = 26 * s;
  return paint(size, [&](double u, double v) {
    const bool block = u >= left && u < right && v >= top && v < bottom;
    const bool cavity = u >= cav_left && u < cav_right && v < cav_bottom;
    return block && !cavity;
  });
}

BinaryMask annulus_cut_blob(int size) {
  const double c = 0.5 * size;
  const double base = 0.30 * size;
  const double cut_inner = 0.20 * size;
  const double half_angle = 0.35;
  return paint(size, [&](double u, double v) {
    const double du = u - c;
    const double dv = v - c;
    const double theta = std::atan2(dv, du);
    const double r = std::hypot(du, dv);
    const double rim = base * (1.0 + 0.08 * std::cos(3.0 * theta + 0.4) + 0.05 * std::sin(2.0 * theta));
    const bool in_cut = r >= cut_inner && std::abs(theta) <= half_angle;
    return r <= rim && !in_cut;
  });
}

std::vector<Fixture> suite() {
  std::vector<Fixture> out;
  for (int size : {64, 128}) {
    out.push_back({"disk_" + std::to_string(size), "disk", size, true, disk(size)});
    out.push_back({"rectangle_" + std::to_string(size), "rectangle", size, true, rectangle(size)});
    out.push_back({"star_" + std::to_string(size), "star", size, false, star(size)});
    out.push_back({"u_shape_" + std::to_string(size), "u_shape", size, false, u_shape(size)});
    out.push_back({"annulus_cut_blob_" + std::to_string(size), "annulus_cut_blob", size, false,
                   annulus_cut_blob(size)});
  }
  return out;
}

BinaryMask by_name(const std::string& shape, int size) {
  if (shape == "disk") return disk(size);
  if (shape == "rectangle") return rectangle(size);
  if (shape == "star") return star(size);
  if (shape == "u_shape") return u_shape(size);
  if (shape == "annulus_cut_blob") return annulus_cut_blob(size);
  throw Error("unknown shape '" + shape + "'");
}

}  // namespace lcdvf::shapes
