#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "limitroots/bilinear.hpp"
#include "limitroots/point_index.hpp"

namespace limitroots {

// Sequence of generator indices. A word w = (w0, w1, ..., wk) denotes the
// product s_{w0} s_{w1} ... s_{wk}, so it acts on vectors right to left.
using Word = std::vector<int>;

// Dedup tolerance for root coordinates.
inline constexpr double kRootDedupTol = 1e-8;

// Coordinates beyond this magnitude abort enumeration.
inline constexpr double kCoordinateLimit = 1e12;

struct Root {
  Vector coords;     // over Delta
  int depth = 1;
  long parent = -1;  // id of the depth-1 predecessor, -1 for simple roots
  int generator = -1;  // rho = s_generator(parent); simple index when depth 1
};

// rho = word . alpha_simple, with |word| = depth - 1.
struct Witness {
  int simple = 0;
  Word word;
};

class RootTable {
 public:
  RootTable(int rank, int max_depth);

  int rank() const { return rank_; }
  int max_depth() const { return max_depth_; }
  std::size_t size() const { return roots_.size(); }
  const Root& operator[](std::size_t id) const { return roots_[id]; }
  const std::vector<Root>& roots() const { return roots_; }

  // Roots of the given depth (1-based). Empty past the last nonempty level.
  std::span<const Root> level(int depth) const;
  // First id of the given depth; ids at that depth are contiguous.
  std::size_t level_begin(int depth) const;

  // Number of roots of depth <= depth.
  std::size_t count_up_to(int depth) const;

  std::optional<std::size_t> find(const Vector& coords) const;
  Witness witness(std::size_t id) const;

 private:
  friend RootTable enumerate(const GeometricModule& m, int max_depth);

  int rank_;
  int max_depth_;
  std::vector<Root> roots_;
  std::vector<std::size_t> level_begin_;  // size max_depth + 1
  PointIndex index_;
};

// Breadth-first enumeration of the positive roots of depth <= max_depth.
// Requires Delta to be a basis.
RootTable enumerate(const GeometricModule& m, int max_depth);

struct KappaReport {
  double kappa = 1.0;
  double lambda = 4.0;
  std::vector<double> sampled_values;  // distinct nonzero |B(alpha, rho)| < 1
};

KappaReport kappa_lambda(const GeometricModule& m, const RootTable& table);

struct DepthNormViolation {
  std::size_t root_id = 0;
  double norm_squared = 0.0;
  double bound = 0.0;
};

// Roots whose squared Euclidean norm (Delta orthonormal) falls below
// 1 + lambda (depth - 1) by more than 1e-9.
std::vector<DepthNormViolation> audit_depth_norm(const GeometricModule& m,
                                                 const RootTable& table,
                                                 const KappaReport& report);

// Walks v down to a simple root by reflecting in simple roots alpha with
// B(alpha, v) > 0. Returns the witness if v is a positive root, nullopt
// otherwise. Independent of any enumerated table.
std::optional<Witness> descend_to_simple(const GeometricModule& m, const Vector& v,
                                         int max_steps = 100000);

// Applies a word to a vector (right-to-left).
Vector apply_word(const GeometricModule& m, const Word& w, const Vector& v);

// CSV: depth, c0..c{n-1}, l1_norm, q_normalized
void write_roots_csv(std::ostream& out, const GeometricModule& m, const RootTable& table);

}  // namespace limitroots
