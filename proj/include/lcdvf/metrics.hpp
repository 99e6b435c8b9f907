#pragma once

#include <array>

#include "lcdvf/types.hpp"

namespace lcdvf {

inline constexpr std::array<double, 5> kBoundFThresholds = {1.0, 2.0, 3.0, 4.0, 5.0};

struct BoundF {
  double mean = 0.0;
  std::array<double, 5> per_threshold{};
};

struct MetricsReport {
  double iou = 0.0;
  double dice = 0.0;
  double boundf = 0.0;
  std::array<double, 5> boundf_per_threshold{};
};

// |pred & gt| / |pred | gt|; 1 when both are empty.
double iou(const BinaryMask& pred, const BinaryMask& gt);

// 2 |pred & gt| / (|pred| + |gt|); 1 when both are empty.
double dice(const BinaryMask& pred, const BinaryMask& gt);

// Boundary F1 over Euclidean matching radii 1..5 px on the inner boundaries.
// Both boundaries empty -> 1 at every threshold; exactly one empty -> 0.
BoundF boundf(const BinaryMask& pred, const BinaryMask& gt);

MetricsReport evaluate(const BinaryMask& pred, const BinaryMask& gt);

}  // namespace lcdvf
