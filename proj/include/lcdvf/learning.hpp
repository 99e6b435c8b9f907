#pragma once

#include <cstddef>
#include <vector>

#include "lcdvf/contour.hpp"
#include "lcdvf/snake.hpp"
#include "lcdvf/types.hpp"
#include "lcdvf/vector_flow.hpp"

namespace lcdvf {

// Structured hinge-loss subgradients w.r.t. the snake's parameter maps.
// Nodes are attributed to the pixel they round to.
struct SubgradientMaps {
  double d_alpha = 0.0;
  ScalarField d_beta;
  ScalarField d_kappa;
  ScalarField d_mask;
};

// sum |y_{s+1} - y_s|^2 over gt minus the same over pred.
double subgrad_alpha(const Contour& gt, const Contour& pred);

// Per pixel: squared second differences of gt nodes rounding there, minus
// those of pred nodes.
ScalarField subgrad_beta(const Contour& gt, const Contour& pred, int width, int height);

// raster(gt) - raster(pred), values in {-1, 0, 1}.
ScalarField subgrad_kappa(const Contour& gt, const Contour& pred, int width, int height);

struct MaskSubgradient {
  ScalarField diff;
  std::size_t clamped = 0;  // soft-mask values pulled back into [0, 1]
};

// clamp(soft, 0, 1) - gt.
MaskSubgradient subgrad_mask(const ScalarField& soft_mask, const BinaryMask& gt);

// d_alpha, d_beta and d_kappa for one pair; d_mask is left zero.
SubgradientMaps subgradients(const Contour& gt, const Contour& pred, int width, int height);

// Outer boundary of the largest 4-connected component, traced along pixel
// edges (vertices at pixel corners). Rasterizing it reproduces that
// component exactly when the component has no holes.
Contour trace_boundary(const BinaryMask& mask);

// Cyclic shift of `contour` minimizing the mean node distance to `reference`
// (same node count).
Contour align_to(const Contour& contour, const Contour& reference);

// Traced boundary resampled to reference.size() nodes and aligned to it.
Contour ground_truth_contour(const BinaryMask& mask, const Contour& reference);

struct EpochRecord {
  int epoch = 0;
  double iou = 0.0;
  double d_alpha = 0.0;
  double alpha = 0.0;
};

struct FitResult {
  ParameterSet best;
  double best_iou = 0.0;
  double initial_iou = 0.0;
  ParameterSet last;
  std::vector<EpochRecord> history;
};

// Direct per-pixel descent: each epoch runs the snake from `init` under the
// current parameters, takes the subgradients against the traced ground
// truth and steps alpha, beta (projected to >= 0) and kappa. Returns the
// parameters with the best IoU seen, the initial ones included.
FitResult fit_parameters(const BinaryMask& gt_mask, const ForceField& force, const Contour& init,
                         const ParameterSet& initial, const SnakeConfig& config, double learn_rate, int epochs);

}  // namespace lcdvf
