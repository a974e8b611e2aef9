#pragma once

#include <optional>
#include <vector>

#include "limitroots/bilinear.hpp"
#include "limitroots/limits.hpp"
#include "limitroots/normalization.hpp"
#include "limitroots/roots.hpp"

namespace limitroots {

enum class DihedralKind { kFinite, kAffine, kInfiniteNonAffine };

std::string_view to_string(DihedralKind kind);

// The dihedral reflection subgroup generated by the reflections in two
// positive roots.
struct DihedralInfo {
  DihedralKind kind = DihedralKind::kFinite;
  double b_value = 0.0;
  // Table ids of the canonical simple roots, when known.
  std::optional<std::pair<std::size_t, std::size_t>> canonical_simples;
  std::vector<LimitPoint> limit_points;
};

// Classifies the subgroup generated by s_{table[first]} and s_{table[second]}.
// When B >= 1 the canonical simple pair is searched for among the table's
// roots in the same plane; Error(kCanonicalPairNotInTable) if it is absent.
DihedralInfo dihedral_subsystem(const GeometricModule& m, const TransverseHyperplane& h,
                                const RootTable& table, std::size_t first,
                                std::size_t second);

// Standard parabolic subsystem on the generators in `subset`.
struct ParabolicRestriction {
  GeometricModule module;
  std::vector<int> generators;  // sorted
  Matrix inclusion;             // rank(m) x |subset|, column i = e_{generators[i]}

  Vector lift(const Vector& v) const { return inclusion * v; }
};

ParabolicRestriction parabolic_restriction(const GeometricModule& m, std::vector<int> subset);

// One parabolic restriction per connected component of the Coxeter graph.
std::vector<ParabolicRestriction> reducible_split(const GeometricModule& m);

// The canonical module (V_A, B_A) of a set of roots of m together with the
// linear map phi_A sending its i-th basis vector to roots[i].
struct SubsystemEmbedding {
  GeometricModule source;
  GeometricModule target;
  Matrix matrix;  // dim(target) x |roots|
};

// Throws Error(kInvalidSimpleSystem) unless the roots are positively
// independent with pairings in {-cos(pi/k)} or <= -1.
SubsystemEmbedding canonical_module(const GeometricModule& target,
                                    const std::vector<Vector>& roots);

struct PhiReport {
  std::size_t roots_checked = 0;
  std::size_t not_positive_roots = 0;  // images that do not descend to a simple root
  std::size_t collisions = 0;          // distinct sources with the same image
  std::size_t form_mismatches = 0;     // pairs with B_target(phi u, phi v) != B_A(u, v)
  double max_form_error = 0.0;

  std::size_t mismatches() const { return not_positive_roots + collisions + form_mismatches; }
};

// Enumerates the source roots up to `depth` and checks that phi_A maps them
// injectively onto positive roots of the target while preserving B.
PhiReport verify_phi_bijection(const SubsystemEmbedding& emb, int depth);

}  // namespace limitroots
