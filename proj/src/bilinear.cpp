#include "limitroots/bilinear.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <string>
#include <utility>

#include "limitroots/nnls.hpp"

namespace limitroots {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidSpec: return "InvalidSpec";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kIsotropicMirror: return "IsotropicMirror";
    case ErrorCode::kDepthOverflow: return "DepthOverflow";
    case ErrorCode::kAllOrthogonal: return "AllOrthogonal";
    case ErrorCode::kNotPositivelyIndependent: return "NotPositivelyIndependent";
    case ErrorCode::kOnKernel: return "OnKernel";
    case ErrorCode::kCoincidentPoints: return "CoincidentPoints";
    case ErrorCode::kKernelCrossing: return "KernelCrossing";
    case ErrorCode::kEmptySet: return "EmptySet";
    case ErrorCode::kEmptyQuadric: return "EmptyQuadric";
    case ErrorCode::kCanonicalPairNotInTable: return "CanonicalPairNotInTable";
    case ErrorCode::kInvalidSimpleSystem: return "InvalidSimpleSystem";
    case ErrorCode::kUnsupportedRank: return "UnsupportedRank";
  }
  return "Unknown";
}

namespace {

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidSpec, what);
}

std::string pair_name(int i, int j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

void check_gram(const Matrix& gram) {
  const Eigen::Index n = gram.rows();
  for (Eigen::Index s = 0; s < n; ++s) {
    if (std::abs(gram(s, s) - 1.0) > kClassTol) {
      invalid("diagonal entry " + std::to_string(s) + " of the Gram matrix is not 1");
    }
    for (Eigen::Index t = s + 1; t < n; ++t) {
      const double b = gram(s, t);
      if (std::abs(b - gram(t, s)) > kClassTol) {
        invalid("Gram matrix not symmetric at " + pair_name(s, t));
      }
      if (b > -1.0 + kClassTol && classical_label(b) == 0) {
        invalid("pairing " + std::to_string(b) + " at " + pair_name(s, t) +
                " is neither -cos(pi/m) nor <= -1");
      }
    }
  }
}

}  // namespace

void CoxeterSpec::validate() const {
  if (rank < 1) invalid("rank must be positive");
  if (static_cast<int>(labels.size()) != rank) invalid("labels must have rank rows");
  for (int s = 0; s < rank; ++s) {
    if (static_cast<int>(labels[s].size()) != rank) {
      invalid("labels row " + std::to_string(s) + " has wrong length");
    }
  }
  for (int s = 0; s < rank; ++s) {
    if (labels[s][s] != 1) invalid("diagonal label at " + std::to_string(s) + " must be 1");
    for (int t = s + 1; t < rank; ++t) {
      if (labels[s][t] != labels[t][s]) invalid("labels not symmetric at " + pair_name(s, t));
      const int m = labels[s][t];
      if (m != kInfiniteLabel && m < 2) {
        invalid("label at " + pair_name(s, t) + " must be >= 2 or 0 (infinity)");
      }
    }
  }
  std::set<std::pair<int, int>> seen;
  for (const auto& o : b_overrides) {
    if (o.i < 0 || o.j < 0 || o.i >= rank || o.j >= rank || o.i == o.j) {
      invalid("override indices " + pair_name(o.i, o.j) + " out of range");
    }
    if (labels[o.i][o.j] != kInfiniteLabel) {
      invalid("override on finite label at " + pair_name(o.i, o.j));
    }
    if (!(o.value <= -1.0)) {
      invalid("override value at " + pair_name(o.i, o.j) + " must be <= -1");
    }
    if (!seen.insert(std::minmax(o.i, o.j)).second) {
      invalid("duplicate override for " + pair_name(o.i, o.j));
    }
  }
}

int classical_label(double value) {
  if (value > kClassTol || value < -1.0) return 0;
  const double angle = std::acos(std::clamp(-value, -1.0, 1.0));
  if (angle <= 0.0) return 0;
  const double k = std::round(std::numbers::pi / angle);
  if (k < 2.0 || k > 1e6) return 0;
  if (std::abs(value + std::cos(std::numbers::pi / k)) > kClassTol) return 0;
  return static_cast<int>(k);
}

GeometricModule::GeometricModule(Matrix form, Matrix simple_roots, bool is_basis)
    : form_(std::move(form)),
      simple_roots_(std::move(simple_roots)),
      is_basis_(is_basis) {
  gram_ = simple_roots_.transpose() * form_ * simple_roots_;
}

GeometricModule GeometricModule::from_gram(const Matrix& gram) {
  if (gram.rows() != gram.cols() || gram.rows() == 0) {
    invalid("Gram matrix must be square and nonempty");
  }
  check_gram(gram);
  const Matrix sym = 0.5 * (gram + gram.transpose());
  return GeometricModule(sym, Matrix::Identity(gram.rows(), gram.rows()), true);
}

GeometricModule GeometricModule::embedded(const Matrix& ambient_form,
                                          const Matrix& simple_roots) {
  if (ambient_form.rows() != ambient_form.cols() ||
      ambient_form.rows() != simple_roots.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "ambient form and simple roots disagree");
  }
  const Matrix sym = 0.5 * (ambient_form + ambient_form.transpose());
  GeometricModule m(sym, simple_roots, false);
  check_gram(m.gram_);
  if (!positively_independent(simple_roots)) {
    throw Error(ErrorCode::kNotPositivelyIndependent,
                "simple roots are not positively independent");
  }
  // A square invertible simple system is a basis in disguise; keep the flag
  // honest so callers relying on coordinates over Delta can use it.
  if (simple_roots.rows() == simple_roots.cols() &&
      simple_roots.isApprox(Matrix::Identity(simple_roots.rows(), simple_roots.cols()))) {
    m.is_basis_ = true;
  }
  return m;
}

GeometricModule build_module(const CoxeterSpec& spec) {
  spec.validate();
  const int n = spec.rank;
  Matrix gram = Matrix::Identity(n, n);
  for (int s = 0; s < n; ++s) {
    for (int t = s + 1; t < n; ++t) {
      const int m = spec.labels[s][t];
      const double b = m == kInfiniteLabel ? -1.0 : -std::cos(std::numbers::pi / m);
      gram(s, t) = gram(t, s) = b;
    }
  }
  for (const auto& o : spec.b_overrides) {
    gram(o.i, o.j) = gram(o.j, o.i) = o.value;
  }
  return GeometricModule::from_gram(gram);
}

double bilinear(const GeometricModule& m, const Vector& u, const Vector& v) {
  if (u.size() != m.dim() || v.size() != m.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "vector dimension does not match module dimension " + std::to_string(m.dim()));
  }
  return u.dot(m.form() * v);
}

double quadratic(const GeometricModule& m, const Vector& v) {
  return bilinear(m, v, v);
}

Vector reflect(const GeometricModule& m, const Vector& mirror, const Vector& v) {
  const double qm = quadratic(m, mirror);
  if (std::abs(qm) <= kClassTol) {
    throw Error(ErrorCode::kIsotropicMirror, "cannot reflect in an isotropic vector");
  }
  return v - (2.0 * bilinear(m, mirror, v) / qm) * mirror;
}

Vector reflect_simple(const GeometricModule& m, int s, const Vector& v) {
  if (v.size() != m.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "vector dimension does not match module");
  }
  if (m.is_basis()) {
    Vector out = v;
    out(s) -= 2.0 * m.form().row(s).dot(v);
    return out;
  }
  const Vector alpha = m.simple_root(s);
  return v - 2.0 * bilinear(m, alpha, v) * alpha;
}

SignatureReport signature(const GeometricModule& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m.form());
  const Vector& values = solver.eigenvalues();
  const double zero_tol = 1e-8 * values.cwiseAbs().maxCoeff();
  SignatureReport report;
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    if (std::abs(values(k)) <= zero_tol) {
      ++report.n_zero;
      report.radical_basis.push_back(solver.eigenvectors().col(k));
    } else if (values(k) > 0.0) {
      ++report.n_positive;
    } else {
      ++report.n_negative;
    }
  }
  return report;
}

std::vector<std::vector<int>> components(const GeometricModule& m) {
  const int n = m.rank();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int s = 0; s < n; ++s) {
    for (int t = s + 1; t < n; ++t) {
      if (std::abs(m.gram()(s, t)) > kClassTol) parent[find(s)] = find(t);
    }
  }
  std::vector<std::vector<int>> out;
  std::vector<int> slot(n, -1);
  for (int s = 0; s < n; ++s) {
    const int r = find(s);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[slot[r]].push_back(s);
  }
  return out;
}

namespace {

bool hull_reaches_origin(const Matrix& columns) {
  double scale = 0.0;
  for (Eigen::Index j = 0; j < columns.cols(); ++j) {
    scale = std::max(scale, columns.col(j).norm());
  }
  if (scale == 0.0) return true;
  const HullMinimum hull = min_norm_in_hull(columns);
  return hull.point.norm() <= kClassTol * scale;
}

}  // namespace

bool positively_independent(const Matrix& columns) {
  return !hull_reaches_origin(columns);
}

bool radical_cone_trivial(const GeometricModule& m) {
  return !hull_reaches_origin(m.form() * m.simple_roots());
}

}  // namespace limitroots
