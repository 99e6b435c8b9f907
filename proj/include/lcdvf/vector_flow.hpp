#pragma once

#include <limits>
#include <string_view>

#include "lcdvf/distance_transform.hpp"
#include "lcdvf/types.hpp"

namespace lcdvf {

inline constexpr double kNoClip = std::numeric_limits<double>::infinity();

// External energy D evaluated at sub-pixel positions.
//  - Sampled: D is a per-pixel map, sampled bilinearly.
//  - HalfSquaredDistance: D(p) = 0.5 * DT(p)^2 with DT sampled bilinearly.
//    LCDVF is the negative gradient of this potential.
class ExternalPotential {
 public:
  enum class Kind { Sampled, HalfSquaredDistance };

  static ExternalPotential sampled(ScalarField energy);
  static ExternalPotential half_squared_distance(DistanceField dt);

  Kind kind() const { return kind_; }
  const ScalarField& field() const { return field_; }
  int width() const { return field_.width(); }
  int height() const { return field_.height(); }

  double at(Point p) const;

 private:
  ExternalPotential(Kind kind, ScalarField field) : kind_(kind), field_(std::move(field)) {}

  Kind kind_ = Kind::Sampled;
  ScalarField field_;
};

enum class FieldKind { DVF, LCDVF, EnergyGradient };

std::string_view to_string(FieldKind kind);

// Per-pixel external force (pixels per unit time before time-step scaling),
// every vector clipped to magnitude <= clip_norm.
struct ForceField {
  VectorField field;
  FieldKind kind = FieldKind::LCDVF;
  double clip_norm = kNoClip;
  ExternalPotential potential;

  int width() const { return field.width(); }
  int height() const { return field.height(); }
  Point at(Point p) const;
};

// -grad DT. Unit magnitude away from the medial axis; potential D = DT.
ForceField dvf(const DistanceField& dt, double clip_norm);

// -DT * grad DT. Vanishes on the boundary; potential D = DT^2 / 2.
ForceField lcdvf(const DistanceField& dt, double clip_norm);

// -grad E for an arbitrary external-energy map E; potential D = E.
ForceField energy_gradient_field(const ScalarField& energy, double clip_norm);

// Scales every vector longer than clip_norm down to clip_norm.
void clip_vectors(VectorField& field, double clip_norm);

}  // namespace lcdvf
