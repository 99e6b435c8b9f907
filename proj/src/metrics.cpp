#include "lcdvf/metrics.hpp"

#include <vector>

#include "lcdvf/distance_transform.hpp"
#include "lcdvf/field_ops.hpp"

namespace lcdvf {

namespace {

struct Overlap {
  long both = 0;
  long pred = 0;
  long gt = 0;
};

Overlap overlap(const BinaryMask& pred, const BinaryMask& gt) {
  require_same_shape(pred, gt, "metrics");
  long both = 0, np = 0, ng = 0;
  const auto& p = pred.data();
  const auto& g = gt.data();
  const long n = static_cast<long>(p.size());
#pragma omp parallel for reduction(+ : both, np, ng) schedule(static)
  for (long i = 0; i < n; ++i) {
    const bool a = p[i] != 0;
    const bool b = g[i] != 0;
    both += a && b;
    np += a;
    ng += b;
  }
  return {both, np, ng};
}

// Fraction of `from` pixels whose distance (read from `dist`) is <= radius.
double matched_fraction(const std::vector<Pixel>& from, const DistanceField& dist, double radius) {
  long hits = 0;
  for (const Pixel& p : from) hits += dist(p.u, p.v) <= radius;
  return static_cast<double>(hits) / static_cast<double>(from.size());
}

}  // namespace

double iou(const BinaryMask& pred, const BinaryMask& gt) {
  const Overlap o = overlap(pred, gt);
  const long uni = o.pred + o.gt - o.both;
  return uni == 0 ? 1.0 : static_cast<double>(o.both) / static_cast<double>(uni);
}

double dice(const BinaryMask& pred, const BinaryMask& gt) {
  const Overlap o = overlap(pred, gt);
  const long total = o.pred + o.gt;
  return total == 0 ? 1.0 : 2.0 * static_cast<double>(o.both) / static_cast<double>(total);
}

BoundF boundf(const BinaryMask& pred, const BinaryMask& gt) {
  require_same_shape(pred, gt, "boundf");
  const auto pb = boundary_pixels(pred);
  const auto gb = boundary_pixels(gt);
  BoundF out;
  if (pb.empty() || gb.empty()) {
    const double value = pb.empty() && gb.empty() ? 1.0 : 0.0;
    out.per_threshold.fill(value);
    out.mean = value;
    return out;
  }
  const DistanceField to_gt = edt_exact(gb, gt.width(), gt.height());
  const DistanceField to_pred = edt_exact(pb, pred.width(), pred.height());
  double sum = 0.0;
  for (std::size_t t = 0; t < kBoundFThresholds.size(); ++t) {
    const double precision = matched_fraction(pb, to_gt, kBoundFThresholds[t]);
    const double recall = matched_fraction(gb, to_pred, kBoundFThresholds[t]);
    const double f = precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
    out.per_threshold[t] = f;
    sum += f;
  }
  out.mean = sum / static_cast<double>(kBoundFThresholds.size());
  return out;
}

MetricsReport evaluate(const BinaryMask& pred, const BinaryMask& gt) {
  const BoundF bf = boundf(pred, gt);
  return {iou(pred, gt), dice(pred, gt), bf.mean, bf.per_threshold};
}

}  // namespace lcdvf
