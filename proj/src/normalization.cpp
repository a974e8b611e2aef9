#include "limitroots/normalization.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "limitroots/nnls.hpp"

namespace limitroots {

namespace {

// Margin required of a constructed functional on every simple root.
constexpr double kTransverseMargin = 1e-6;

double kernel_tolerance(const Vector& v) {
  return kClassTol * std::max(1.0, v.cwiseAbs().maxCoeff());
}

}  // namespace

TransverseHyperplane::TransverseHyperplane(const GeometricModule& m, Vector functional)
    : functional_(std::move(functional)) {
  if (functional_.size() != m.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "functional has wrong dimension");
  }
  for (int s = 0; s < m.rank(); ++s) {
    if (functional_.dot(m.simple_root(s)) <= kClassTol) {
      throw Error(ErrorCode::kInvalidSpec,
                  "functional is not positive on simple root " + std::to_string(s));
    }
  }
}

double TransverseHyperplane::operator()(const Vector& v) const {
  if (v.size() != functional_.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "point has wrong dimension");
  }
  return functional_.dot(v);
}

TransverseHyperplane default_hyperplane(const GeometricModule& m) {
  if (!m.is_basis()) {
    throw Error(ErrorCode::kInvalidSpec, "the coordinate-sum cut requires Delta to be a basis");
  }
  return TransverseHyperplane(m, Vector::Ones(m.dim()));
}

TransverseHyperplane make_transverse(const GeometricModule& m) {
  const Matrix& simple = m.simple_roots();
  const HullMinimum hull = min_norm_in_hull(simple);
  const double norm2 = hull.point.squaredNorm();
  double scale = 0.0;
  for (Eigen::Index j = 0; j < simple.cols(); ++j) {
    scale = std::max(scale, simple.col(j).norm());
  }
  if (std::sqrt(norm2) <= kClassTol * scale) {
    throw Error(ErrorCode::kNotPositivelyIndependent,
                "simple roots are not positively independent; no transverse cut exists");
  }
  // The nearest hull point p satisfies <p, alpha> >= |p|^2 for every alpha.
  Vector f = hull.point / norm2;
  const Vector values = simple.transpose() * f;
  if (values.minCoeff() < kTransverseMargin * values.maxCoeff()) {
    throw Error(ErrorCode::kNotPositivelyIndependent,
                "no functional separates the simple roots from the origin");
  }
  f *= static_cast<double>(m.rank()) / values.sum();
  return TransverseHyperplane(m, f);
}

NormalizedPoint normalize(const TransverseHyperplane& h, const Vector& v) {
  const double fv = h(v);
  if (std::abs(fv) <= kernel_tolerance(v)) {
    throw Error(ErrorCode::kOnKernel, "vector lies in the kernel of the cut functional");
  }
  return {v / fv, std::nullopt};
}

NormalizedPoint rebase(const TransverseHyperplane&, const TransverseHyperplane& to,
                       const NormalizedPoint& p) {
  NormalizedPoint out = normalize(to, p.coords);
  out.root_id = p.root_id;
  return out;
}

Vector simplex_coordinates(const GeometricModule& m, const TransverseHyperplane& h,
                           const Vector& p) {
  if (!m.is_basis()) {
    throw Error(ErrorCode::kInvalidSpec, "barycentric coordinates require Delta to be a basis");
  }
  // Delta is the ambient basis, so p's coordinates are its coefficients.
  Vector bary(m.rank());
  for (int s = 0; s < m.rank(); ++s) bary(s) = p(s) * h(m.simple_root(s));
  return bary;
}

}  // namespace limitroots
