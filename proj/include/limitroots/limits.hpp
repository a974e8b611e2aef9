#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "limitroots/bilinear.hpp"
#include "limitroots/normalization.hpp"
#include "limitroots/roots.hpp"

namespace limitroots {

// Dedup tolerance for points on the cut hyperplane.
inline constexpr double kLimitDedupTol = 1e-8;

struct PairSource {
  std::size_t first = 0;   // root ids in the table used
  std::size_t second = 0;
};

struct ActedSource {
  Word word;
  std::size_t base = 0;  // index into the seed list the point was acted from
};

struct ConicSource {
  std::uint32_t face = 0;  // bitmask of the generators spanning the sampled face
};

using Provenance = std::variant<std::monostate, PairSource, ActedSource, ConicSource>;

// A point of the normalized isotropic cone, with where it came from.
struct LimitPoint {
  Vector coords;
  Provenance provenance;
};

struct IntersectionResult {
  int count = 0;
  std::vector<LimitPoint> points;  // ordered by lambda
  std::vector<double> lambdas;     // point = lambda * a + (1 - lambda) * x
  bool tangent = false;
};

// Intersection of the line through two points of the cut with the isotropic
// cone: solves q(a - x) l^2 + 2 B(x, a - x) l + q(x) = 0 for u = l a + (1-l) x.
//
// Tangency is decided on the discriminant B(a,x)^2 - q(a) q(x) relative to
// the size of its two terms, since normalized deep roots have q of order
// 1/|rho|_1^2 and an absolute threshold would call every such line tangent.
IntersectionResult line_quadric_intersect(const GeometricModule& m,
                                          const TransverseHyperplane& h,
                                          const Vector& a, const Vector& x);

// Limit points of the dihedral reflection subgroups generated by pairs of
// roots of depth <= max_pairs_depth (all pairs with |B| >= 1).
std::vector<LimitPoint> e2_points(const GeometricModule& m, const TransverseHyperplane& h,
                                  const RootTable& table, int max_pairs_depth);

// As e2_points, restricted to pairs (alpha, rho) with alpha simple; rho
// ranges over the whole table.
std::vector<LimitPoint> e2_circ_points(const GeometricModule& m,
                                       const TransverseHyperplane& h,
                                       const RootTable& table);

// Projective action w . x: applies the word to x and renormalizes once.
// Throws Error(kKernelCrossing) if a partial image meets the kernel of h.
Vector act(const GeometricModule& m, const TransverseHyperplane& h, const Word& w,
           const Vector& x);

// x is visible from the normalized root of rho iff B(rho, x) >= 0.
bool visible(const GeometricModule& m, const Vector& rho, const Vector& x);

double directed_hausdorff(std::span<const Vector> from, std::span<const Vector> to);

// Points of the cut isotropic cone found by shooting rays from a point where
// q < 0 (angular sweep in rank 3, seeded random directions above). With
// clip set, only points inside conv(normalized Delta) are returned.
std::vector<LimitPoint> conic_sample(const GeometricModule& m, const TransverseHyperplane& h,
                                     int count, bool clip = true, std::uint64_t seed = 1);

// Rank 3 only: the cut conic as polylines (split where rays miss it), for
// drawing. Not clipped.
std::vector<std::vector<Vector>> conic_polylines(const GeometricModule& m,
                                                 const TransverseHyperplane& h,
                                                 int samples);

struct F0Sample {
  std::vector<std::vector<int>> generating;  // generating subsets, sorted
  std::vector<LimitPoint> seeds;             // samples of the generating faces
  std::vector<LimitPoint> points;            // W-images of the seeds, deduplicated
};

// Experimental sampler of F_0: samples of the cut isotropic cone on every
// generating face, acted on by all words of length <= orbit_length. Uses the
// default cut; Delta must be a basis.
F0Sample f0_sample(const GeometricModule& m, int orbit_length, int samples_per_face = 360,
                   std::uint64_t seed = 1);

struct PointResiduals {
  double q = 0.0;         // q(x)
  double level = 0.0;     // f(x) - 1
  double min_bary = 0.0;  // smallest barycentric coordinate
};

PointResiduals residuals(const GeometricModule& m, const TransverseHyperplane& h,
                         const Vector& x);

}  // namespace limitroots
