#include "lcdvf/field_ops.hpp"

#include <algorithm>
#include <cmath>

namespace lcdvf {

namespace {

struct Stencil {
  int u0, v0, u1, v1;
  double fu, fv;
};

Stencil locate(int width, int height, Point p) {
  if (!std::isfinite(p.u) || !std::isfinite(p.v)) {
    throw NumericError("bilinear sample at non-finite point (corrupted contour state)");
  }
  const double u = std::clamp(p.u, 0.0, static_cast<double>(width - 1));
  const double v = std::clamp(p.v, 0.0, static_cast<double>(height - 1));
  Stencil s{};
  s.u0 = std::min(static_cast<int>(std::floor(u)), std::max(width - 2, 0));
  s.v0 = std::min(static_cast<int>(std::floor(v)), std::max(height - 2, 0));
  s.u1 = std::min(s.u0 + 1, width - 1);
  s.v1 = std::min(s.v0 + 1, height - 1);
  s.fu = u - s.u0;
  s.fv = v - s.v0;
  return s;
}

double blend(const ScalarField& f, const Stencil& s) {
  const double top = (1.0 - s.fu) * f(s.u0, s.v0) + s.fu * f(s.u1, s.v0);
  const double bottom = (1.0 - s.fu) * f(s.u0, s.v1) + s.fu * f(s.u1, s.v1);
  return (1.0 - s.fv) * top + s.fv * bottom;
}

}  // namespace

double bilinear_sample(const ScalarField& field, Point p) {
  return blend(field, locate(field.width(), field.height(), p));
}

Point bilinear_sample(const VectorField& field, Point p) {
  const Stencil s = locate(field.width(), field.height(), p);
  return {blend(field.u, s), blend(field.v, s)};
}

VectorField central_gradient(const ScalarField& field) {
  const int w = field.width();
  const int h = field.height();
  if (w < 2 || h < 2) {
    throw DimensionError("central_gradient needs a field of at least 2x2");
  }
  VectorField grad(w, h);
#pragma omp parallel for schedule(static)
  for (int v = 0; v < h; ++v) {
    for (int u = 0; u < w; ++u) {
      double du;
      if (u == 0) {
        du = field(1, v) - field(0, v);
      } else if (u == w - 1) {
        du = field(w - 1, v) - field(w - 2, v);
      } else {
        du = 0.5 * (field(u + 1, v) - field(u - 1, v));
      }
      double dv;
      if (v == 0) {
        dv = field(u, 1) - field(u, 0);
      } else if (v == h - 1) {
        dv = field(u, h - 1) - field(u, h - 2);
      } else {
        dv = 0.5 * (field(u, v + 1) - field(u, v - 1));
      }
      grad.u(u, v) = du;
      grad.v(u, v) = dv;
    }
  }
  return grad;
}

Raster rasterize(const Contour& contour, int width, int height) {
  Raster out{BinaryMask(width, height, 0), false};
  if (std::abs(contour.signed_area()) < kDegenerateArea) {
    out.degenerate = true;
    return out;
  }
  const auto nodes = contour.nodes();
  const std::size_t n = nodes.size();

#pragma omp parallel for schedule(static)
  for (int v = 0; v < height; ++v) {
    const double y = v;
    std::vector<double> crossings;
    for (std::size_t i = 0; i < n; ++i) {
      const Point& a = nodes[i];
      const Point& b = nodes[(i + 1) % n];
      if ((a.v > y) != (b.v > y)) {
        crossings.push_back(a.u + (y - a.v) * (b.u - a.u) / (b.v - a.v));
      }
    }
    std::sort(crossings.begin(), crossings.end());
    // Pixel u is inside iff an odd number of crossings satisfy x <= u.
    for (std::size_t k = 0; k + 1 < crossings.size(); k += 2) {
      const double lo = std::ceil(crossings[k]);
      const double hi = std::ceil(crossings[k + 1]) - 1.0;
      const int first = static_cast<int>(std::clamp(lo, 0.0, static_cast<double>(width)));
      const int last = static_cast<int>(std::clamp(hi, -1.0, static_cast<double>(width - 1)));
      for (int u = first; u <= last; ++u) out.mask(u, v) = 1;
    }
  }
  return out;
}

std::vector<Pixel> boundary_pixels(const BinaryMask& mask) {
  std::vector<Pixel> out;
  const int w = mask.width();
  const int h = mask.height();
  auto background = [&](int u, int v) { return !mask.contains(u, v) || mask(u, v) == 0; };
  for (int v = 0; v < h; ++v) {
    for (int u = 0; u < w; ++u) {
      if (mask(u, v) == 0) continue;
      if (background(u - 1, v) || background(u + 1, v) || background(u, v - 1) || background(u, v + 1)) {
        out.push_back({u, v});
      }
    }
  }
  return out;
}

BinaryMask raster_circle(const Circle& circle, int width, int height) {
  BinaryMask out(width, height, 0);
  // r = sqrt(n) squares back to slightly above n; keep integer ties outside.
  const double r2 = circle.radius * circle.radius * (1.0 - 1e-12);
  for (int v = 0; v < height; ++v) {
    for (int u = 0; u < width; ++u) {
      const double du = u - circle.center.u;
      const double dv = v - circle.center.v;
      if (du * du + dv * dv < r2) out(u, v) = 1;
    }
  }
  return out;
}

}  // namespace lcdvf
