#include "limitroots/subsystems.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace limitroots {

std::string_view to_string(DihedralKind kind) {
  switch (kind) {
    case DihedralKind::kFinite: return "finite";
    case DihedralKind::kAffine: return "affine";
    case DihedralKind::kInfiniteNonAffine: return "infinite_nonaffine";
  }
  return "unknown";
}

namespace {

// Residual allowed when deciding that a root lies in span(rho1, rho2).
constexpr double kPlaneTol = 1e-8;

double cross(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a(0) * b(1) - a(1) * b(0);
}

std::pair<std::size_t, std::size_t> search_canonical_pair(const GeometricModule& m,
                                                          const RootTable& table,
                                                          std::size_t first,
                                                          std::size_t second) {
  Matrix plane(m.dim(), 2);
  plane.col(0) = table[first].coords;
  plane.col(1) = table[second].coords;
  const auto qr = plane.colPivHouseholderQr();

  std::vector<std::pair<std::size_t, Eigen::Vector2d>> members;
  for (std::size_t id = 0; id < table.size(); ++id) {
    const Vector& v = table[id].coords;
    const Eigen::Vector2d c = qr.solve(v);
    if ((plane * c - v).norm() <= kPlaneTol * v.norm()) members.emplace_back(id, c);
  }

  // Positive roots of the plane lie in a pointed cone; its two boundary rays
  // are the candidates.
  auto lowest = members.front();
  auto highest = members.front();
  for (const auto& mem : members) {
    if (cross(lowest.second, mem.second) < 0.0) lowest = mem;
    if (cross(highest.second, mem.second) > 0.0) highest = mem;
  }
  const std::size_t a = lowest.first;
  const std::size_t b = highest.first;
  const bool spans_all = std::all_of(members.begin(), members.end(), [&](const auto& mem) {
    return cross(lowest.second, mem.second) >= -kPlaneTol * mem.second.norm() &&
           cross(mem.second, highest.second) >= -kPlaneTol * mem.second.norm();
  });
  if (a == b || !spans_all || bilinear(m, table[a].coords, table[b].coords) > -1.0 + kClassTol) {
    throw Error(ErrorCode::kCanonicalPairNotInTable,
                "canonical simple roots of the dihedral subgroup are not in the table");
  }
  return std::minmax(a, b);
}

}  // namespace

DihedralInfo dihedral_subsystem(const GeometricModule& m, const TransverseHyperplane& h,
                                const RootTable& table, std::size_t first, std::size_t second) {
  if (first == second) {
    throw Error(ErrorCode::kCoincidentPoints, "a dihedral subgroup needs two distinct roots");
  }
  const Vector& r1 = table[first].coords;
  const Vector& r2 = table[second].coords;
  DihedralInfo info;
  info.b_value = bilinear(m, r1, r2);
  const double mag = std::abs(info.b_value);
  if (mag < 1.0 - kClassTol) {
    info.kind = DihedralKind::kFinite;
    return info;
  }
  info.kind = mag <= 1.0 + kClassTol ? DihedralKind::kAffine : DihedralKind::kInfiniteNonAffine;

  const auto hit =
      line_quadric_intersect(m, h, normalize(h, r1).coords, normalize(h, r2).coords);
  for (const auto& p : hit.points) {
    info.limit_points.push_back({p.coords, PairSource{first, second}});
  }

  if (info.b_value <= -1.0 + kClassTol) {
    info.canonical_simples = std::minmax(first, second);
  } else {
    info.canonical_simples = search_canonical_pair(m, table, first, second);
  }
  return info;
}

ParabolicRestriction parabolic_restriction(const GeometricModule& m, std::vector<int> subset) {
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  if (subset.empty()) throw Error(ErrorCode::kInvalidSpec, "parabolic subset is empty");
  if (subset.front() < 0 || subset.back() >= m.rank()) {
    throw Error(ErrorCode::kInvalidSpec, "parabolic subset index out of range");
  }
  const auto k = static_cast<Eigen::Index>(subset.size());
  Matrix gram(k, k);
  Matrix inclusion = Matrix::Zero(m.rank(), k);
  for (Eigen::Index i = 0; i < k; ++i) {
    inclusion(subset[i], i) = 1.0;
    for (Eigen::Index j = 0; j < k; ++j) gram(i, j) = m.gram()(subset[i], subset[j]);
  }
  if (m.is_basis()) {
    return {GeometricModule::from_gram(gram), std::move(subset), std::move(inclusion)};
  }
  // Keep the ambient embedding when Delta is not a basis.
  Matrix roots(m.dim(), k);
  for (Eigen::Index i = 0; i < k; ++i) roots.col(i) = m.simple_root(subset[i]);
  return {GeometricModule::embedded(m.form(), roots), std::move(subset), std::move(inclusion)};
}

std::vector<ParabolicRestriction> reducible_split(const GeometricModule& m) {
  std::vector<ParabolicRestriction> out;
  for (auto& comp : components(m)) out.push_back(parabolic_restriction(m, comp));
  return out;
}

SubsystemEmbedding canonical_module(const GeometricModule& target,
                                    const std::vector<Vector>& roots) {
  if (roots.empty()) throw Error(ErrorCode::kInvalidSimpleSystem, "no roots given");
  const auto k = static_cast<Eigen::Index>(roots.size());
  Matrix phi(target.dim(), k);
  for (Eigen::Index i = 0; i < k; ++i) {
    if (roots[i].size() != target.dim()) {
      throw Error(ErrorCode::kDimensionMismatch, "root has wrong dimension");
    }
    phi.col(i) = roots[i];
  }
  const Matrix gram = phi.transpose() * target.form() * phi;
  for (Eigen::Index i = 0; i < k; ++i) {
    if (std::abs(gram(i, i) - 1.0) > kClassTol) {
      throw Error(ErrorCode::kInvalidSimpleSystem,
                  "root " + std::to_string(i) + " does not have q = 1");
    }
    for (Eigen::Index j = i + 1; j < k; ++j) {
      const double b = gram(i, j);
      if (b > -1.0 + kClassTol && classical_label(b) == 0) {
        throw Error(ErrorCode::kInvalidSimpleSystem,
                    "pairing " + std::to_string(b) + " of roots " + std::to_string(i) + "," +
                        std::to_string(j) + " is neither -cos(pi/k) nor <= -1");
      }
    }
  }
  if (!positively_independent(phi)) {
    throw Error(ErrorCode::kInvalidSimpleSystem, "roots are not positively independent");
  }
  return {GeometricModule::from_gram(gram), target, std::move(phi)};
}

PhiReport verify_phi_bijection(const SubsystemEmbedding& emb, int depth) {
  const RootTable source_roots = enumerate(emb.source, depth);
  PhiReport report;
  report.roots_checked = source_roots.size();

  std::vector<Vector> images;
  images.reserve(source_roots.size());
  PointIndex seen(kRootDedupTol, 1e-6);
  for (std::size_t id = 0; id < source_roots.size(); ++id) {
    Vector img = emb.matrix * source_roots[id].coords;
    if (!descend_to_simple(emb.target, img)) ++report.not_positive_roots;
    if (seen.insert_if_absent(img, id)) ++report.collisions;
    images.push_back(std::move(img));
  }

  for (std::size_t i = 0; i < images.size(); ++i) {
    for (std::size_t j = i; j < images.size(); ++j) {
      const double want = bilinear(emb.source, source_roots[i].coords, source_roots[j].coords);
      const double got = bilinear(emb.target, images[i], images[j]);
      const double err = std::abs(got - want);
      report.max_form_error = std::max(report.max_form_error, err);
      if (err > 1e-10 * std::max(1.0, std::abs(want))) ++report.form_mismatches;
    }
  }
  return report;
}

}  // namespace limitroots
