#pragma once

#include <Eigen/Dense>
#include <vector>

#include "limitroots/error.hpp"

namespace limitroots {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Absolute tolerance used for every classification comparison
// (is a value -1? 0? -cos(pi/m)?).
inline constexpr double kClassTol = 1e-9;

// Label sentinel for m_{s,t} = infinity.
inline constexpr int kInfiniteLabel = 0;

struct BOverride {
  int i = 0;
  int j = 0;
  double value = -1.0;
};

// Coxeter matrix plus the optional bilinear values for infinite labels.
struct CoxeterSpec {
  int rank = 0;
  std::vector<std::vector<int>> labels;
  std::vector<BOverride> b_overrides;

  // Throws Error(kInvalidSpec) when the labels or overrides are malformed.
  void validate() const;
};

// A real vector space V with a symmetric bilinear form and a simple system
// Delta of unit vectors. The simple roots are the columns of simple_roots();
// form() is the Gram matrix of B in the ambient basis of V.
//
// When Delta is a basis (the usual case) the ambient basis is Delta itself,
// so form() == gram() and simple_roots() is the identity.
class GeometricModule {
 public:
  // Delta is the standard basis of R^n and B has the given Gram matrix.
  static GeometricModule from_gram(const Matrix& gram);

  // Delta given by the columns of simple_roots inside a space whose form has
  // Gram matrix ambient_form. Used for subsystems whose simple roots are
  // not linearly independent.
  static GeometricModule embedded(const Matrix& ambient_form,
                                  const Matrix& simple_roots);

  int rank() const { return static_cast<int>(gram_.rows()); }
  int dim() const { return static_cast<int>(form_.rows()); }
  bool is_basis() const { return is_basis_; }

  const Matrix& gram() const { return gram_; }
  const Matrix& form() const { return form_; }
  const Matrix& simple_roots() const { return simple_roots_; }
  Vector simple_root(int s) const { return simple_roots_.col(s); }

 private:
  GeometricModule(Matrix form, Matrix simple_roots, bool is_basis);

  Matrix form_;
  Matrix simple_roots_;
  Matrix gram_;
  bool is_basis_ = true;
};

GeometricModule build_module(const CoxeterSpec& spec);

double bilinear(const GeometricModule& m, const Vector& u, const Vector& v);
double quadratic(const GeometricModule& m, const Vector& v);

// B-reflection of v in the hyperplane B-orthogonal to mirror.
Vector reflect(const GeometricModule& m, const Vector& mirror, const Vector& v);

// Reflection in the s-th simple root.
Vector reflect_simple(const GeometricModule& m, int s, const Vector& v);

struct SignatureReport {
  int n_positive = 0;
  int n_negative = 0;
  int n_zero = 0;
  std::vector<Vector> radical_basis;
};

SignatureReport signature(const GeometricModule& m);

// Connected components of the graph on simple roots with an edge whenever
// B(alpha_s, alpha_t) != 0. Each component is sorted; components are ordered
// by their smallest generator.
std::vector<std::vector<int>> components(const GeometricModule& m);

// True iff no nonzero nonnegative combination of simple roots lies in the
// radical of B.
bool radical_cone_trivial(const GeometricModule& m);

// True iff no nonzero nonnegative combination of the columns vanishes.
bool positively_independent(const Matrix& columns);

// If value == -cos(pi/k) for some integer k >= 2 (within kClassTol) returns k.
int classical_label(double value);

}  // namespace limitroots
