#pragma once

#include <span>
#include <vector>

#include "lcdvf/contour.hpp"
#include "lcdvf/types.hpp"
#include "lcdvf/vector_flow.hpp"

namespace lcdvf {

// Energy weights: scalar continuity weight, per-pixel curvature and balloon
// maps. kappa > 0 inflates (pushes along the outward normal).
struct ParameterSet {
  double alpha = 0.01;
  ScalarField beta;
  ScalarField kappa;

  static ParameterSet uniform(int width, int height, double alpha, double beta, double kappa);

  // Throws on alpha < 0, negative beta, non-finite values or shape mismatch.
  void validate(int width, int height) const;
};

struct SnakeConfig {
  int iterations = 50;
  double tau = 0.1;
  std::size_t nodes = 60;
  bool resample_each_step = false;
  double clip_norm = kNoClip;

  void validate() const;
};

struct Energy {
  double external = 0.0;
  double continuity = 0.0;
  double curvature = 0.0;
  double balloon = 0.0;
  bool degenerate = false;

  double total() const { return external + continuity + curvature + balloon; }
};

// sum_s [ D(y_s) + alpha |y_{s+1} - y_s|^2 + beta(y_s) |y_{s+1} - 2 y_s + y_{s-1}|^2 ]
//   + sum over enclosed pixels of kappa.
Energy energy_eval(const Contour& contour, const ExternalPotential& external, const ParameterSet& params);

// Internal energy with per-node curvature weights held fixed.
double internal_energy(const Contour& contour, double alpha, std::span<const double> beta_at_nodes);

std::vector<double> sample_at_nodes(const ScalarField& field, const Contour& contour);

// Dense L x L matrix, row-major.
class InternalSystem {
 public:
  explicit InternalSystem(std::size_t n) : n_(n), a_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  std::vector<double> apply(std::span<const double> x) const;
  bool symmetric(double tol = 0.0) const;

 private:
  std::size_t n_;
  std::vector<double> a_;
};

// Hessian of the internal energy w.r.t. one coordinate axis (the same matrix
// acts on u and v). Rows: 2*alpha*(-1, 2, -1) plus the curvature stencil
// 2*sum_s beta_s r_s r_s^T, which is 2*b*(1, -4, 6, -4, 1) for uniform b.
// Symmetrized as (A + A^T)/2.
InternalSystem assemble_internal_system(const Contour& contour, std::span<const double> beta_at_nodes,
                                        double alpha);
InternalSystem assemble_internal_system(const Contour& contour, const ParameterSet& params);

// kappa(y_s) times the unit outward normal, perpendicular to y_{s+1} - y_{s-1}.
std::vector<Point> balloon_force(const Contour& contour, const ScalarField& kappa);

// Semi-implicit update per axis: (I + tau A) y' = y + tau (F_ext + F_balloon),
// then clamp to the frame and optionally resample by arc length.
Contour evolve_step(const Contour& contour, const ForceField& force, const ParameterSet& params,
                    const SnakeConfig& config);

struct TraceEntry {
  Contour contour;
  double energy = 0.0;
  double mean_displacement = 0.0;
};

struct EvolutionTrace {
  std::vector<TraceEntry> entries;  // iterations + 1, initial state first
};

struct EvolveResult {
  Contour final_contour;
  EvolutionTrace trace;
};

// Applies evolve_step config.iterations times. iterations == 0 is a dry run.
EvolveResult evolve(const Contour& initial, const ForceField& force, const ParameterSet& params,
                    const SnakeConfig& config);

}  // namespace lcdvf
