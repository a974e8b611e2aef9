#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "limitroots/bilinear.hpp"
#include "limitroots/limits.hpp"
#include "limitroots/normalization.hpp"
#include "limitroots/roots.hpp"

namespace limitroots {

// Everything drawn in a figure, in barycentric coordinates over the
// normalized simple roots (each point sums to 1).
struct Scene {
  int rank = 0;
  std::vector<Vector> roots;
  std::vector<int> root_depths;
  std::vector<Vector> limit_points;
  std::string limit_label = "E2";
  std::vector<std::vector<Vector>> conic;  // polylines (rank 3)
  std::vector<Vector> quadric_points;      // isolated samples (rank 2, rank 4)
  std::vector<std::pair<Vector, Vector>> lines;

  // Throws Error(kInvalidSpec) if a point's coordinates do not sum to 1.
  void validate() const;
};

struct RenderOptions {
  int size = 800;
  double azimuth_deg = 35.0;
  double elevation_deg = 20.0;
  int conic_samples = 720;
};

Scene build_scene(const GeometricModule& m, const TransverseHyperplane& h,
                  const RootTable& table, const std::vector<LimitPoint>& limits,
                  const std::string& limit_label, const RenderOptions& options);

// SVG 1.1 document. Ranks 2, 3 and 4 only.
std::string render_svg(const Scene& scene, const RenderOptions& options);

// One row per plotted item: kind, index, barycentric coordinates.
void write_scene_csv(std::ostream& out, const Scene& scene);

}  // namespace limitroots
