#include "limitroots/limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace limitroots {

namespace {

constexpr double kLimitCell = 1e-6;

// Smallest positive root-pair product magnitude we still resolve; below it
// a discriminant is indistinguishable from zero.
double disc_floor(const GeometricModule& m, const Vector& a, const Vector& x) {
  const double g = m.form().cwiseAbs().maxCoeff();
  const double s = kClassTol * a.norm() * x.norm() * g;
  return s * s;
}

// Orthonormal basis of the kernel of the functional, as columns.
Matrix kernel_basis(const Vector& f) {
  const Eigen::Index d = f.size();
  Eigen::HouseholderQR<Matrix> qr(f);
  const Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  return q.rightCols(d - 1);
}

// Positive parameters t with q(p + t dir) = 0, given q(p) < 0.
void ray_hits(const GeometricModule& m, const Vector& p, const Vector& dir,
              std::vector<double>& out) {
  out.clear();
  const double a = quadratic(m, dir);
  const double b = bilinear(m, p, dir);
  const double c = quadratic(m, p);
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
  if (std::abs(a) <= 1e-14 * scale) {
    if (std::abs(b) > 0.0) {
      const double t = -c / (2.0 * b);
      if (t > 0.0) out.push_back(t);
    }
    return;
  }
  const double disc = b * b - a * c;
  if (disc < 0.0) return;
  const double root = std::sqrt(disc);
  const double qq = -(b + std::copysign(root, b));
  std::vector<double> ts;
  ts.push_back(qq / a);
  if (qq != 0.0) ts.push_back(c / qq);
  std::sort(ts.begin(), ts.end());
  for (double t : ts) {
    if (t > 0.0) out.push_back(t);
  }
}

// A point of the cut with q < 0, if the form has a negative direction that
// meets the cut.
std::optional<Vector> negative_point(const GeometricModule& m, const TransverseHyperplane& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m.form());
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    if (solver.eigenvalues()(k) >= 0.0) continue;
    const Vector v = solver.eigenvectors().col(k);
    std::vector<Vector> candidates{v};
    for (double t : {1e-3, 1e-2, 1e-1}) {
      for (int s = 0; s < m.rank(); ++s) {
        candidates.push_back(v + t * m.simple_root(s));
        candidates.push_back(v - t * m.simple_root(s));
      }
    }
    for (const Vector& w : candidates) {
      const double fw = h(w);
      if (std::abs(fw) <= 1e-6 * w.norm()) continue;
      const Vector p = w / fw;
      if (quadratic(m, p) < 0.0) return p;
    }
  }
  return std::nullopt;
}

bool inside_simplex(const GeometricModule& m, const TransverseHyperplane& h, const Vector& x) {
  return simplex_coordinates(m, h, x).minCoeff() >= -kClassTol;
}

// Points of the cut isotropic cone when B is positive semidefinite: the
// isotropic cone is then the radical.
std::vector<Vector> radical_points(const GeometricModule& m, const TransverseHyperplane& h,
                                   const SignatureReport& sig, int count, std::uint64_t seed) {
  std::vector<Vector> out;
  if (sig.n_zero == 1) {
    const Vector& v = sig.radical_basis.front();
    if (std::abs(h(v)) > kClassTol * v.norm()) out.push_back(v / h(v));
    return out;
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  for (int k = 0; k < count; ++k) {
    Vector v = Vector::Zero(m.dim());
    for (const Vector& r : sig.radical_basis) v += normal(rng) * r;
    if (std::abs(h(v)) > 1e-6 * v.norm()) out.push_back(v / h(v));
  }
  return out;
}

std::vector<Vector> raw_conic_points(const GeometricModule& m, const TransverseHyperplane& h,
                                     int count, std::uint64_t seed) {
  const SignatureReport sig = signature(m);
  if (sig.n_negative == 0) {
    if (sig.n_zero == 0) {
      throw Error(ErrorCode::kEmptyQuadric, "the form is positive definite");
    }
    auto pts = radical_points(m, h, sig, count, seed);
    if (pts.empty()) throw Error(ErrorCode::kEmptyQuadric, "radical does not meet the cut");
    return pts;
  }
  const auto p = negative_point(m, h);
  if (!p) throw Error(ErrorCode::kEmptyQuadric, "no point of the cut has q < 0");

  const Matrix kernel = kernel_basis(h.functional());
  const Eigen::Index k = kernel.cols();
  std::vector<Vector> dirs;
  if (k == 1) {
    dirs = {kernel.col(0), -kernel.col(0)};
  } else if (k == 2) {
    for (int i = 0; i < count; ++i) {
      const double theta = 2.0 * std::numbers::pi * i / count;
      dirs.push_back(std::cos(theta) * kernel.col(0) + std::sin(theta) * kernel.col(1));
    }
  } else {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    for (int i = 0; i < count; ++i) {
      Vector c(k);
      for (Eigen::Index j = 0; j < k; ++j) c(j) = normal(rng);
      dirs.push_back(kernel * c.normalized());
    }
  }

  std::vector<Vector> out;
  std::vector<double> ts;
  for (const Vector& dir : dirs) {
    ray_hits(m, *p, dir, ts);
    for (double t : ts) out.push_back(*p + t * dir);
  }
  return out;
}

void push_unique(std::vector<LimitPoint>& out, PointIndex& index, LimitPoint pt) {
  if (!index.insert_if_absent(pt.coords, out.size())) out.push_back(std::move(pt));
}

}  // namespace

IntersectionResult line_quadric_intersect(const GeometricModule& m,
                                          const TransverseHyperplane& h, const Vector& a,
                                          const Vector& x) {
  (void)h;
  const Vector diff = a - x;
  if (diff.norm() <= kClassTol) {
    throw Error(ErrorCode::kCoincidentPoints, "the two points coincide");
  }
  const double lead = quadratic(m, diff);
  const double half = bilinear(m, x, diff);
  const double konst = quadratic(m, x);

  IntersectionResult out;
  auto emit = [&](double lambda) {
    out.lambdas.push_back(lambda);
    out.points.push_back({lambda * a + (1.0 - lambda) * x, {}});
  };

  const double lead_scale = diff.cwiseAbs().dot(m.form().cwiseAbs() * diff.cwiseAbs());
  if (std::abs(lead) <= kClassTol * lead_scale) {
    // The line is parallel to an asymptotic direction: linear equation.
    if (std::abs(half) > kClassTol * lead_scale) emit(-konst / (2.0 * half));
    out.count = static_cast<int>(out.points.size());
    out.tangent = false;
    return out;
  }

  const double bax = bilinear(m, a, x);
  const double qa = quadratic(m, a);
  const double disc = bax * bax - qa * konst;
  const double disc_scale = std::max(bax * bax, std::abs(qa * konst)) + disc_floor(m, a, x);
  if (disc < -kClassTol * disc_scale) return out;
  if (disc <= kClassTol * disc_scale) {
    emit(-half / lead);
    out.count = 1;
    out.tangent = true;
    return out;
  }
  const double root = std::sqrt(disc);
  const double qq = -(half + std::copysign(root, half));
  double l1 = qq / lead;
  double l2 = konst / qq;
  if (l1 > l2) std::swap(l1, l2);
  emit(l1);
  emit(l2);
  out.count = 2;
  return out;
}

std::vector<LimitPoint> e2_points(const GeometricModule& m, const TransverseHyperplane& h,
                                  const RootTable& table, int max_pairs_depth) {
  const std::size_t n = table.count_up_to(max_pairs_depth);
  std::vector<Vector> hats(n);
  std::vector<Vector> paired(n);
  for (std::size_t i = 0; i < n; ++i) {
    hats[i] = normalize(h, table[i].coords).coords;
    paired[i] = m.form() * table[i].coords;
  }
  std::vector<LimitPoint> out;
  PointIndex index(kLimitDedupTol, kLimitCell);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double b = paired[i].dot(table[j].coords);
      if (std::abs(b) < 1.0 - kClassTol) continue;
      const auto hit = line_quadric_intersect(m, h, hats[i], hats[j]);
      for (const auto& p : hit.points) push_unique(out, index, {p.coords, PairSource{i, j}});
    }
  }
  return out;
}

std::vector<LimitPoint> e2_circ_points(const GeometricModule& m,
                                       const TransverseHyperplane& h,
                                       const RootTable& table) {
  const int rank = m.rank();
  std::vector<LimitPoint> out;
  PointIndex index(kLimitDedupTol, kLimitCell);
  for (std::size_t j = 0; j < table.size(); ++j) {
    const Vector pairings = m.form() * table[j].coords;
    const Vector hat = normalize(h, table[j].coords).coords;
    for (int s = 0; s < rank; ++s) {
      if (static_cast<std::size_t>(s) == j) continue;
      if (std::abs(pairings(s)) < 1.0 - kClassTol) continue;
      const Vector alpha_hat = normalize(h, m.simple_root(s)).coords;
      const auto hit = line_quadric_intersect(m, h, alpha_hat, hat);
      for (const auto& p : hit.points) {
        push_unique(out, index, {p.coords, PairSource{static_cast<std::size_t>(s), j}});
      }
    }
  }
  return out;
}

Vector act(const GeometricModule& m, const TransverseHyperplane& h, const Word& w,
           const Vector& x) {
  Vector v = x;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    v = reflect_simple(m, *it, v);
    if (std::abs(h(v)) <= kClassTol * v.norm()) {
      throw Error(ErrorCode::kKernelCrossing, "partial image lies in the kernel of the cut");
    }
  }
  return v / h(v);
}

bool visible(const GeometricModule& m, const Vector& rho, const Vector& x) {
  return bilinear(m, rho, x) >= -kClassTol;
}

double directed_hausdorff(std::span<const Vector> from, std::span<const Vector> to) {
  if (from.empty() || to.empty()) throw Error(ErrorCode::kEmptySet, "empty point set");
  double worst = 0.0;
  for (const Vector& a : from) {
    double best = std::numeric_limits<double>::infinity();
    for (const Vector& b : to) {
      best = std::min(best, (a - b).squaredNorm());
      if (best <= worst) break;  // cannot raise the maximum any more
    }
    worst = std::max(worst, best);
  }
  return std::sqrt(worst);
}

std::vector<LimitPoint> conic_sample(const GeometricModule& m, const TransverseHyperplane& h,
                                     int count, bool clip, std::uint64_t seed) {
  if (m.rank() < 2) throw Error(ErrorCode::kEmptyQuadric, "rank 1 has no isotropic vectors");
  std::vector<LimitPoint> out;
  PointIndex index(kLimitDedupTol, kLimitCell);
  for (Vector& p : raw_conic_points(m, h, count, seed)) {
    if (clip && !inside_simplex(m, h, p)) continue;
    push_unique(out, index, {std::move(p), ConicSource{(1u << m.rank()) - 1u}});
  }
  return out;
}

std::vector<std::vector<Vector>> conic_polylines(const GeometricModule& m,
                                                 const TransverseHyperplane& h, int samples) {
  std::vector<std::vector<Vector>> lines;
  if (m.dim() != 3) throw Error(ErrorCode::kUnsupportedRank, "conic polylines need dimension 3");
  const SignatureReport sig = signature(m);
  if (sig.n_negative == 0) return lines;
  const auto p = negative_point(m, h);
  if (!p) return lines;
  const Matrix kernel = kernel_basis(h.functional());
  std::vector<Vector> current;
  std::vector<double> ts;
  for (int i = 0; i <= samples; ++i) {
    const double theta = 2.0 * std::numbers::pi * i / samples;
    const Vector dir = std::cos(theta) * kernel.col(0) + std::sin(theta) * kernel.col(1);
    ray_hits(m, *p, dir, ts);
    if (ts.empty()) {
      if (current.size() > 1) lines.push_back(std::move(current));
      current.clear();
      continue;
    }
    current.push_back(*p + ts.front() * dir);
  }
  if (current.size() > 1) lines.push_back(std::move(current));
  return lines;
}

F0Sample f0_sample(const GeometricModule& m, int orbit_length, int samples_per_face,
                   std::uint64_t seed) {
  const int n = m.rank();
  if (n > 20) throw Error(ErrorCode::kUnsupportedRank, "too many faces to test");
  const TransverseHyperplane h = default_hyperplane(m);
  F0Sample result;
  PointIndex seed_index(kLimitDedupTol, kLimitCell);

  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> face;
    for (int s = 0; s < n; ++s) {
      if (mask & (1u << s)) face.push_back(s);
    }
    if (face.size() < 2) continue;
    const auto k = static_cast<Eigen::Index>(face.size());
    Matrix sub_gram(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
      for (Eigen::Index j = 0; j < k; ++j) sub_gram(i, j) = m.gram()(face[i], face[j]);
    }
    const GeometricModule sub = GeometricModule::from_gram(sub_gram);
    const TransverseHyperplane sub_h = default_hyperplane(sub);
    std::vector<Vector> pts;
    try {
      pts = raw_conic_points(sub, sub_h, samples_per_face, seed + mask);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kEmptyQuadric) throw;
      continue;
    }
    const bool generating = !pts.empty() && std::all_of(pts.begin(), pts.end(), [&](const Vector& p) {
      return inside_simplex(sub, sub_h, p);
    });
    if (!generating) continue;
    result.generating.push_back(face);
    for (const Vector& p : pts) {
      Vector lifted = Vector::Zero(n);
      for (Eigen::Index i = 0; i < k; ++i) lifted(face[i]) = p(i);
      if (!seed_index.insert_if_absent(lifted, result.seeds.size())) {
        result.seeds.push_back({std::move(lifted), ConicSource{mask}});
      }
    }
  }
  std::sort(result.generating.begin(), result.generating.end());

  PointIndex index(kLimitDedupTol, kLimitCell);
  for (std::size_t b = 0; b < result.seeds.size(); ++b) {
    // Breadth-first over words without repeated adjacent letters; each new
    // word prepends a letter to its parent.
    std::vector<std::pair<Word, Vector>> frontier{{Word{}, result.seeds[b].coords}};
    push_unique(result.points, index, {result.seeds[b].coords, ActedSource{{}, b}});
    for (int len = 1; len <= orbit_length; ++len) {
      std::vector<std::pair<Word, Vector>> next;
      for (const auto& [word, image] : frontier) {
        for (int s = 0; s < n; ++s) {
          if (!word.empty() && word.front() == s) continue;
          Word w{s};
          w.insert(w.end(), word.begin(), word.end());
          Vector v;
          try {
            v = act(m, h, Word{s}, image);
          } catch (const Error& e) {
            if (e.code() != ErrorCode::kKernelCrossing) throw;
            continue;
          }
          push_unique(result.points, index, {v, ActedSource{w, b}});
          next.emplace_back(std::move(w), std::move(v));
        }
      }
      frontier = std::move(next);
    }
  }
  return result;
}

PointResiduals residuals(const GeometricModule& m, const TransverseHyperplane& h,
                         const Vector& x) {
  PointResiduals r;
  r.q = quadratic(m, x);
  r.level = h(x) - 1.0;
  r.min_bary = m.is_basis() ? simplex_coordinates(m, h, x).minCoeff() : 0.0;
  return r;
}

}  // namespace limitroots
