#include "lcdvf/snake.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <cmath>
#include <string>

#include "lcdvf/field_ops.hpp"

namespace lcdvf {

ParameterSet ParameterSet::uniform(int width, int height, double alpha, double beta, double kappa) {
  return {alpha, ScalarField(width, height, beta), ScalarField(width, height, kappa)};
}

void ParameterSet::validate(int width, int height) const {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw Error("alpha must be finite and >= 0");
  if (beta.width() != width || beta.height() != height) throw DimensionError("beta map does not match the image");
  if (kappa.width() != width || kappa.height() != height) {
    throw DimensionError("kappa map does not match the image");
  }
  for (double b : beta.data()) {
    if (!(b >= 0.0) || !std::isfinite(b)) throw Error("beta must be finite and >= 0 everywhere");
  }
  for (double k : kappa.data()) {
    if (!std::isfinite(k)) throw Error("kappa must be finite");
  }
}

void SnakeConfig::validate() const {
  if (iterations < 0) throw Error("iterations must be >= 0");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw Error("time step must be positive");
  if (nodes < 3) throw Error("node count must be >= 3");
  if (!(clip_norm > 0.0)) throw Error("clip norm must be positive");
}

std::vector<double> sample_at_nodes(const ScalarField& field, const Contour& contour) {
  std::vector<double> out(contour.size());
  for (std::size_t s = 0; s < contour.size(); ++s) out[s] = bilinear_sample(field, contour[s]);
  return out;
}

namespace {

struct Differences {
  std::vector<Point> first;   // y_{s+1} - y_s
  std::vector<Point> second;  // y_{s+1} - 2 y_s + y_{s-1}
};

Differences differences(const Contour& c) {
  Differences d;
  const long n = static_cast<long>(c.size());
  d.first.resize(c.size());
  d.second.resize(c.size());
  for (long s = 0; s < n; ++s) {
    const Point& prev = c.at_cyclic(s - 1);
    const Point& cur = c.at_cyclic(s);
    const Point& next = c.at_cyclic(s + 1);
    d.first[s] = next - cur;
    d.second[s] = next - 2.0 * cur + prev;
  }
  return d;
}

}  // namespace

double internal_energy(const Contour& contour, double alpha, std::span<const double> beta_at_nodes) {
  if (beta_at_nodes.size() != contour.size()) throw DimensionError("one beta value per node required");
  const Differences d = differences(contour);
  double total = 0.0;
  for (std::size_t s = 0; s < contour.size(); ++s) {
    total += alpha * dot(d.first[s], d.first[s]) + beta_at_nodes[s] * dot(d.second[s], d.second[s]);
  }
  return total;
}

Energy energy_eval(const Contour& contour, const ExternalPotential& external, const ParameterSet& params) {
  require_same_shape(external.field(), params.beta, "energy_eval");
  require_same_shape(external.field(), params.kappa, "energy_eval");
  Energy e;
  const Differences d = differences(contour);
  for (std::size_t s = 0; s < contour.size(); ++s) {
    e.external += external.at(contour[s]);
    e.continuity += params.alpha * dot(d.first[s], d.first[s]);
    e.curvature += bilinear_sample(params.beta, contour[s]) * dot(d.second[s], d.second[s]);
  }
  const Raster inside = rasterize(contour, external.width(), external.height());
  e.degenerate = inside.degenerate;
  for (std::size_t i = 0; i < inside.mask.size(); ++i) {
    if (inside.mask.data()[i]) e.balloon += params.kappa.data()[i];
  }
  return e;
}

std::vector<double> InternalSystem::apply(std::span<const double> x) const {
  std::vector<double> y(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n_; ++j) acc += (*this)(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

bool InternalSystem::symmetric(double tol) const {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
    }
  }
  return true;
}

InternalSystem assemble_internal_system(const Contour& contour, std::span<const double> beta_at_nodes,
                                        double alpha) {
  const std::size_t n = contour.size();
  if (beta_at_nodes.size() != n) throw DimensionError("one beta value per node required");
  InternalSystem a(n);
  auto wrap = [n](long i) { return static_cast<std::size_t>(((i % static_cast<long>(n)) + static_cast<long>(n)) % static_cast<long>(n)); };

  for (long s = 0; s < static_cast<long>(n); ++s) {
    // alpha |y_{s+1} - y_s|^2: gradient row r1 = e_{s+1} - e_s.
    const std::size_t idx1[2] = {wrap(s), wrap(s + 1)};
    const double r1[2] = {-1.0, 1.0};
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) a(idx1[i], idx1[j]) += 2.0 * alpha * r1[i] * r1[j];
    }
    // beta_s |y_{s+1} - 2 y_s + y_{s-1}|^2: r2 = e_{s-1} - 2 e_s + e_{s+1}.
    const std::size_t idx2[3] = {wrap(s - 1), wrap(s), wrap(s + 1)};
    const double r2[3] = {1.0, -2.0, 1.0};
    const double b = beta_at_nodes[static_cast<std::size_t>(s)];
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) a(idx2[i], idx2[j]) += 2.0 * b * r2[i] * r2[j];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double m = 0.5 * (a(i, j) + a(j, i));
      a(i, j) = m;
      a(j, i) = m;
    }
  }
  return a;
}

InternalSystem assemble_internal_system(const Contour& contour, const ParameterSet& params) {
  const std::vector<double> beta = sample_at_nodes(params.beta, contour);
  return assemble_internal_system(contour, beta, params.alpha);
}

std::vector<Point> balloon_force(const Contour& contour, const ScalarField& kappa) {
  std::vector<Point> out(contour.size());
  for (long s = 0; s < static_cast<long>(contour.size()); ++s) {
    const Point tangent = contour.at_cyclic(s + 1) - contour.at_cyclic(s - 1);
    const double length = norm(tangent);
    if (length == 0.0) continue;
    const Point outward{tangent.v / length, -tangent.u / length};
    out[s] = bilinear_sample(kappa, contour[s]) * outward;
  }
  return out;
}

Contour evolve_step(const Contour& contour, const ForceField& force, const ParameterSet& params,
                    const SnakeConfig& config) {
  const std::size_t n = contour.size();
  const InternalSystem a = assemble_internal_system(contour, params);

  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = config.tau * a(i, j) + (i == j ? 1.0 : 0.0);
  }
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) throw NumericError("internal system I + tau*A is not positive definite");

  const std::vector<Point> balloon = balloon_force(contour, params.kappa);
  Eigen::MatrixXd rhs(n, 2);
  for (std::size_t s = 0; s < n; ++s) {
    const Point f = force.at(contour[s]);
    rhs(s, 0) = contour[s].u + config.tau * (f.u + balloon[s].u);
    rhs(s, 1) = contour[s].v + config.tau * (f.v + balloon[s].v);
  }
  const Eigen::MatrixXd next = llt.solve(rhs);

  std::vector<Point> nodes(n);
  for (std::size_t s = 0; s < n; ++s) {
    nodes[s] = {next(s, 0), next(s, 1)};
    if (!std::isfinite(nodes[s].u) || !std::isfinite(nodes[s].v)) {
      throw NumericError("non-finite node after linear solve");
    }
  }
  Contour out = Contour(std::move(nodes)).clamped(force.width(), force.height());
  if (config.resample_each_step) out = out.resampled(n);
  return out;
}

EvolveResult evolve(const Contour& initial, const ForceField& force, const ParameterSet& params,
                    const SnakeConfig& config) {
  config.validate();
  params.validate(force.width(), force.height());

  EvolveResult result{initial, {}};
  result.trace.entries.reserve(static_cast<std::size_t>(config.iterations) + 1);
  result.trace.entries.push_back({initial, energy_eval(initial, force.potential, params).total(), 0.0});

  Contour current = initial;
  for (int it = 1; it <= config.iterations; ++it) {
    Contour next = [&] {
      try {
        return evolve_step(current, force, params, config);
      } catch (const NumericError& e) {
        throw NumericError("iteration " + std::to_string(it) + ": " + e.what());
      }
    }();
    double moved = 0.0;
    if (next.size() == current.size()) {
      for (std::size_t s = 0; s < next.size(); ++s) moved += norm(next[s] - current[s]);
      moved /= static_cast<double>(next.size());
    }
    const double energy = energy_eval(next, force.potential, params).total();
    result.trace.entries.push_back({next, energy, moved});
    current = std::move(next);
  }
  result.final_contour = std::move(current);
  return result;
}

}  // namespace lcdvf
