#include "lcdvf/learning.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "lcdvf/field_ops.hpp"
#include "lcdvf/metrics.hpp"

namespace lcdvf {

namespace {

Pixel nearest_pixel(Point p, int width, int height) {
  const int u = static_cast<int>(std::lround(p.u));
  const int v = static_cast<int>(std::lround(p.v));
  return {std::clamp(u, 0, width - 1), std::clamp(v, 0, height - 1)};
}

double sum_first_sq(const Contour& c) {
  double total = 0.0;
  for (long s = 0; s < static_cast<long>(c.size()); ++s) {
    const Point d = c.at_cyclic(s + 1) - c.at_cyclic(s);
    total += dot(d, d);
  }
  return total;
}

void add_second_sq(ScalarField& out, const Contour& c, double sign) {
  for (long s = 0; s < static_cast<long>(c.size()); ++s) {
    const Point d = c.at_cyclic(s + 1) - 2.0 * c.at_cyclic(s) + c.at_cyclic(s - 1);
    const Pixel px = nearest_pixel(c.at_cyclic(s), out.width(), out.height());
    out(px.u, px.v) += sign * dot(d, d);
  }
}

}  // namespace

double subgrad_alpha(const Contour& gt, const Contour& pred) { return sum_first_sq(gt) - sum_first_sq(pred); }

ScalarField subgrad_beta(const Contour& gt, const Contour& pred, int width, int height) {
  ScalarField out(width, height, 0.0);
  add_second_sq(out, gt, 1.0);
  add_second_sq(out, pred, -1.0);
  return out;
}

ScalarField subgrad_kappa(const Contour& gt, const Contour& pred, int width, int height) {
  const BinaryMask a = rasterize(gt, width, height).mask;
  const BinaryMask b = rasterize(pred, width, height).mask;
  ScalarField out(width, height, 0.0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.data()[i] = static_cast<double>(a.data()[i]) - static_cast<double>(b.data()[i]);
  }
  return out;
}

MaskSubgradient subgrad_mask(const ScalarField& soft_mask, const BinaryMask& gt) {
  require_same_shape(soft_mask, gt, "subgrad_mask");
  MaskSubgradient r{ScalarField(gt.width(), gt.height(), 0.0), 0};
  for (std::size_t i = 0; i < gt.size(); ++i) {
    double s = soft_mask.data()[i];
    if (!std::isfinite(s)) throw NumericError("soft mask contains a non-finite value");
    if (s < 0.0 || s > 1.0) {
      s = std::clamp(s, 0.0, 1.0);
      ++r.clamped;
    }
    r.diff.data()[i] = s - static_cast<double>(gt.data()[i]);
  }
  return r;
}

SubgradientMaps subgradients(const Contour& gt, const Contour& pred, int width, int height) {
  return {subgrad_alpha(gt, pred), subgrad_beta(gt, pred, width, height), subgrad_kappa(gt, pred, width, height),
          ScalarField(width, height, 0.0)};
}

// Crack following. Corner (cu, cv) sits at (cu - 0.5, cv - 0.5). Every
// foreground/background pixel side becomes a directed edge, circling each
// foreground pixel the same way, so outer loops come out with negative
// area and holes with positive area.
Contour trace_boundary(const BinaryMask& mask) {
  const int w = mask.width();
  const int h = mask.height();
  auto fg = [&](int u, int v) { return mask.contains(u, v) && mask(u, v) != 0; };
  const int cw = w + 1;
  auto id = [&](int cu, int cv) { return cv * cw + cu; };

  struct Edge {
    int from, to;
    int du, dv;
    bool used = false;
  };
  std::vector<Edge> edges;
  std::vector<std::array<int, 2>> out((w + 1) * (h + 1), {-1, -1});
  auto add = [&](int fu, int fv, int tu, int tv) {
    const int e = static_cast<int>(edges.size());
    edges.push_back({id(fu, fv), id(tu, tv), tu - fu, tv - fv});
    auto& slot = out[id(fu, fv)];
    (slot[0] < 0 ? slot[0] : slot[1]) = e;
  };
  for (int v = 0; v < h; ++v) {
    for (int u = 0; u < w; ++u) {
      if (!fg(u, v)) continue;
      if (!fg(u, v - 1)) add(u + 1, v, u, v);
      if (!fg(u - 1, v)) add(u, v, u, v + 1);
      if (!fg(u, v + 1)) add(u, v + 1, u + 1, v + 1);
      if (!fg(u + 1, v)) add(u + 1, v + 1, u + 1, v);
    }
  }
  if (edges.empty()) throw EmptyMaskError("cannot trace the boundary of an empty mask");

  std::vector<Point> best;
  double best_area = 0.0;
  for (std::size_t start = 0; start < edges.size(); ++start) {
    if (edges[start].used) continue;
    std::vector<Point> loop;
    int e = static_cast<int>(start);
    while (!edges[e].used) {
      Edge& cur = edges[e];
      cur.used = true;
      loop.push_back({(cur.from % cw) - 0.5, (cur.from / cw) - 0.5});
      // At a pinch corner two edges leave; take the tight turn around the
      // current pixel so diagonal neighbours stay separate.
      const auto& slot = out[cur.to];
      int next = slot[0];
      if (slot[1] >= 0) {
        auto turn = [&](int cand) { return cur.du * edges[cand].dv - cur.dv * edges[cand].du; };
        const int a = slot[0], b = slot[1];
        if (edges[a].used) {
          next = b;
        } else if (edges[b].used) {
          next = a;
        } else {
          next = turn(a) < turn(b) ? a : b;
        }
      }
      if (next < 0) break;
      e = next;
    }
    const double area = signed_area(loop);
    if (area < best_area) {
      best_area = area;
      best = std::move(loop);
    }
  }
  if (best.size() < 3) throw EmptyMaskError("mask has no outer boundary");

  // Drop collinear corners.
  std::vector<Point> simplified;
  const std::size_t n = best.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = best[(i + n - 1) % n], b = best[i], c = best[(i + 1) % n];
    const double cross = (b.u - a.u) * (c.v - b.v) - (b.v - a.v) * (c.u - b.u);
    if (cross != 0.0) simplified.push_back(b);
  }
  return Contour(std::move(simplified));
}

Contour align_to(const Contour& contour, const Contour& reference) {
  const std::size_t n = contour.size();
  if (reference.size() != n) throw DimensionError("alignment needs equal node counts");
  std::size_t best_shift = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t shift = 0; shift < n; ++shift) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += norm(contour[(i + shift) % n] - reference[i]);
    if (total < best) {
      best = total;
      best_shift = shift;
    }
  }
  return contour.rotated(best_shift);
}

Contour ground_truth_contour(const BinaryMask& mask, const Contour& reference) {
  return align_to(trace_boundary(mask).resampled(reference.size()), reference);
}

FitResult fit_parameters(const BinaryMask& gt_mask, const ForceField& force, const Contour& init,
                         const ParameterSet& initial, const SnakeConfig& config, double learn_rate, int epochs) {
  const int w = gt_mask.width();
  const int h = gt_mask.height();
  require_same_shape(gt_mask, force.field.u, "fit_parameters");
  initial.validate(w, h);
  config.validate();
  if (!(learn_rate >= 0.0) || !std::isfinite(learn_rate)) throw Error("learning rate must be finite and >= 0");
  if (epochs < 0) throw Error("epochs must be >= 0");

  const Contour gt_polygon = trace_boundary(gt_mask);

  FitResult result;
  ParameterSet params = initial;
  for (int epoch = 0; epoch <= epochs; ++epoch) {
    std::optional<EvolveResult> run;
    try {
      run.emplace(evolve(init, force, params, config));
    } catch (const Error& e) {
      throw NumericError("epoch " + std::to_string(epoch) + ": " + e.what());
    }
    const Contour& pred = run->final_contour;
    const double score = iou(rasterize(pred, w, h).mask, gt_mask);
    if (epoch == 0) {
      result.initial_iou = score;
      result.best_iou = score;
      result.best = params;
    } else if (score > result.best_iou) {
      result.best_iou = score;
      result.best = params;
    }
    const Contour gt = align_to(gt_polygon.resampled(pred.size()), pred);
    const double d_alpha = subgrad_alpha(gt, pred);
    result.history.push_back({epoch, score, d_alpha, params.alpha});
    if (epoch == epochs) break;

    const ScalarField d_beta = subgrad_beta(gt, pred, w, h);
    // The exact traced polygon gives the ground-truth region pixel for pixel.
    const ScalarField d_kappa = subgrad_kappa(gt_polygon, pred, w, h);
    params.alpha = std::max(0.0, params.alpha - learn_rate * d_alpha);
    for (std::size_t i = 0; i < params.beta.size(); ++i) {
      params.beta.data()[i] = std::max(0.0, params.beta.data()[i] - learn_rate * d_beta.data()[i]);
      // kappa > 0 inflates, so missing ground truth (+1) raises it.
      params.kappa.data()[i] += learn_rate * d_kappa.data()[i];
    }
  }
  result.last = params;
  return result;
}

}  // namespace lcdvf
