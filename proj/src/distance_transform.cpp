#include "lcdvf/distance_transform.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "lcdvf/field_ops.hpp"

namespace lcdvf {

namespace {

constexpr double kFar = 1e20;

void require_boundary(std::span<const Pixel> boundary, int width, int height) {
  if (boundary.empty()) {
    throw EmptyMaskError("no boundary: mask is empty or full-frame degenerate");
  }
  for (const Pixel& p : boundary) {
    if (p.u < 0 || p.v < 0 || p.u >= width || p.v >= height) {
      throw DimensionError("boundary pixel outside the frame");
    }
  }
}

double intersect(const double* f, int q, int p) {
  return ((f[q] + static_cast<double>(q) * q) - (f[p] + static_cast<double>(p) * p)) / (2.0 * (q - p));
}

// 1D squared distance transform of f (length n, stride-free scratch buffers)
// by the lower envelope of parabolas rooted at each sample.
void envelope_1d(const double* f, double* d, int n, std::vector<int>& roots, std::vector<double>& bounds) {
  roots.resize(n);
  bounds.resize(static_cast<std::size_t>(n) + 1);
  int k = -1;
  for (int q = 0; q < n; ++q) {
    if (f[q] >= kFar) continue;
    if (k < 0) {
      k = 0;
      roots[0] = q;
      bounds[0] = -std::numeric_limits<double>::infinity();
      bounds[1] = std::numeric_limits<double>::infinity();
      continue;
    }
    // bounds[0] is -inf, so the pop loop stops at k == 0.
    double s = intersect(f, q, roots[k]);
    while (s <= bounds[k]) {
      --k;
      s = intersect(f, q, roots[k]);
    }
    ++k;
    roots[k] = q;
    bounds[k] = s;
    bounds[k + 1] = std::numeric_limits<double>::infinity();
  }
  if (k < 0) {
    for (int q = 0; q < n; ++q) d[q] = kFar;
    return;
  }
  int j = 0;
  for (int q = 0; q < n; ++q) {
    while (bounds[j + 1] < q) ++j;
    const double dq = q - roots[j];
    d[q] = dq * dq + f[roots[j]];
  }
}

ScalarField squared_edt(const ScalarField& seeds) {
  const int w = seeds.width();
  const int h = seeds.height();
  ScalarField cols(w, h, kFar);

#pragma omp parallel
  {
    std::vector<double> in(h), out(h);
    std::vector<int> roots;
    std::vector<double> bounds;
#pragma omp for schedule(static)
    for (int u = 0; u < w; ++u) {
      for (int v = 0; v < h; ++v) in[v] = seeds(u, v);
      envelope_1d(in.data(), out.data(), h, roots, bounds);
      for (int v = 0; v < h; ++v) cols(u, v) = out[v];
    }
  }

  ScalarField result(w, h, kFar);
#pragma omp parallel
  {
    std::vector<double> out(w);
    std::vector<int> roots;
    std::vector<double> bounds;
#pragma omp for schedule(static)
    for (int v = 0; v < h; ++v) {
      const double* row = &cols.data()[static_cast<std::size_t>(v) * w];
      envelope_1d(row, out.data(), w, roots, bounds);
      for (int u = 0; u < w; ++u) result(u, v) = out[u];
    }
  }
  return result;
}

}  // namespace

DistanceField edt_brute(std::span<const Pixel> boundary, int width, int height) {
  require_boundary(boundary, width, height);
  DistanceField dt(width, height);
  for (int v = 0; v < height; ++v) {
    for (int u = 0; u < width; ++u) {
      double best = std::numeric_limits<double>::infinity();
      for (const Pixel& b : boundary) {
        const double du = u - b.u;
        const double dv = v - b.v;
        best = std::min(best, du * du + dv * dv);
      }
      dt(u, v) = std::sqrt(best);
    }
  }
  return dt;
}

DistanceField edt_exact(std::span<const Pixel> boundary, int width, int height) {
  require_boundary(boundary, width, height);
  ScalarField seeds(width, height, kFar);
  for (const Pixel& b : boundary) seeds(b.u, b.v) = 0.0;
  ScalarField dt = squared_edt(seeds);
  for (double& value : dt.data()) value = std::sqrt(value);
  return dt;
}

DistanceField mask_to_dt(const BinaryMask& mask) {
  const std::size_t fg = count_foreground(mask);
  if (fg == 0) throw EmptyMaskError("mask has no foreground pixels");
  if (fg == mask.size()) throw EmptyMaskError("mask has no background pixels");
  const auto boundary = boundary_pixels(mask);
  return edt_exact(boundary, mask.width(), mask.height());
}

DistanceField interior_distance(const BinaryMask& mask) {
  const int w = mask.width() + 2;
  const int h = mask.height() + 2;
  ScalarField seeds(w, h, 0.0);
  for (int v = 0; v < mask.height(); ++v) {
    for (int u = 0; u < mask.width(); ++u) {
      if (mask(u, v)) seeds(u + 1, v + 1) = kFar;
    }
  }
  const ScalarField padded = squared_edt(seeds);
  DistanceField out(mask.width(), mask.height(), 0.0);
  for (int v = 0; v < mask.height(); ++v) {
    for (int u = 0; u < mask.width(); ++u) out(u, v) = std::sqrt(padded(u + 1, v + 1));
  }
  return out;
}

}  // namespace lcdvf
