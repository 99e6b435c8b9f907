#include "lcdvf/vector_flow.hpp"

#include <cmath>

#include "lcdvf/field_ops.hpp"

namespace lcdvf {

ExternalPotential ExternalPotential::sampled(ScalarField energy) {
  return ExternalPotential(Kind::Sampled, std::move(energy));
}

ExternalPotential ExternalPotential::half_squared_distance(DistanceField dt) {
  return ExternalPotential(Kind::HalfSquaredDistance, std::move(dt));
}

double ExternalPotential::at(Point p) const {
  const double value = bilinear_sample(field_, p);
  return kind_ == Kind::HalfSquaredDistance ? 0.5 * value * value : value;
}

std::string_view to_string(FieldKind kind) {
  switch (kind) {
    case FieldKind::DVF:
      return "dvf";
    case FieldKind::LCDVF:
      return "lcdvf";
    case FieldKind::EnergyGradient:
      return "energy";
  }
  return "unknown";
}

Point ForceField::at(Point p) const { return bilinear_sample(field, p); }

void clip_vectors(VectorField& field, double clip_norm) {
  if (!(clip_norm > 0.0)) throw Error("clip_norm must be positive");
  if (std::isinf(clip_norm)) return;
  auto& fu = field.u.data();
  auto& fv = field.v.data();
  const long n = static_cast<long>(fu.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    const double m = std::hypot(fu[i], fv[i]);
    if (m > clip_norm) {
      const double s = clip_norm / m;
      fu[i] *= s;
      fv[i] *= s;
    }
  }
}

namespace {

VectorField negated_gradient(const ScalarField& f) {
  VectorField g = central_gradient(f);
  for (double& x : g.u.data()) x = -x;
  for (double& x : g.v.data()) x = -x;
  return g;
}

}  // namespace

ForceField dvf(const DistanceField& dt, double clip_norm) {
  VectorField g = negated_gradient(dt);
  clip_vectors(g, clip_norm);
  return {std::move(g), FieldKind::DVF, clip_norm, ExternalPotential::sampled(dt)};
}

ForceField lcdvf(const DistanceField& dt, double clip_norm) {
  VectorField g = negated_gradient(dt);
  auto& fu = g.u.data();
  auto& fv = g.v.data();
  const auto& d = dt.data();
  const long n = static_cast<long>(fu.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    fu[i] *= d[i];
    fv[i] *= d[i];
  }
  clip_vectors(g, clip_norm);
  return {std::move(g), FieldKind::LCDVF, clip_norm, ExternalPotential::half_squared_distance(dt)};
}

ForceField energy_gradient_field(const ScalarField& energy, double clip_norm) {
  VectorField g = negated_gradient(energy);
  clip_vectors(g, clip_norm);
  return {std::move(g), FieldKind::EnergyGradient, clip_norm, ExternalPotential::sampled(energy)};
}

}  // namespace lcdvf
