#pragma once

#include <optional>

#include "limitroots/bilinear.hpp"

namespace limitroots {

// Affine hyperplane {v : f(v) = 1} where f is positive on every simple root.
class TransverseHyperplane {
 public:
  // Throws Error(kInvalidSpec) unless f(alpha) > kClassTol for every simple
  // root of m.
  TransverseHyperplane(const GeometricModule& m, Vector functional);

  const Vector& functional() const { return functional_; }
  double operator()(const Vector& v) const;

 private:
  Vector functional_;
};

struct NormalizedPoint {
  Vector coords;
  std::optional<std::size_t> root_id;
};

// Coordinate-sum functional (the cut V_1). Requires Delta to be a basis.
TransverseHyperplane default_hyperplane(const GeometricModule& m);

// A functional positive on all simple roots, built from the nearest point of
// conv(Delta) to the origin and scaled so that its values on Delta sum to
// the rank. Works when Delta is not a basis.
TransverseHyperplane make_transverse(const GeometricModule& m);

// v / f(v). Throws Error(kOnKernel) when f(v) vanishes.
NormalizedPoint normalize(const TransverseHyperplane& h, const Vector& v);

// Moves a point of the cut h to the cut `to` along its ray.
NormalizedPoint rebase(const TransverseHyperplane& from, const TransverseHyperplane& to,
                       const NormalizedPoint& p);

// Barycentric coordinates of p with respect to the normalized simple roots.
// Requires Delta to be a basis.
Vector simplex_coordinates(const GeometricModule& m, const TransverseHyperplane& h,
                           const Vector& p);

}  // namespace limitroots
