#include "limitroots/render.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>

namespace limitroots {

namespace {

struct Projected {
  double x = 0.0;
  double y = 0.0;
  double depth = 0.0;
};

class Projector {
 public:
  Projector(int rank, const RenderOptions& options) : rank_(rank) {
    if (rank == 2) {
      vertices_ = {Eigen::Vector3d(0, 0, 0), Eigen::Vector3d(1, 0, 0)};
    } else if (rank == 3) {
      vertices_ = {Eigen::Vector3d(0, 0, 0), Eigen::Vector3d(1, 0, 0),
                   Eigen::Vector3d(0.5, std::sqrt(3.0) / 2.0, 0)};
    } else if (rank == 4) {
      const double az = options.azimuth_deg * std::numbers::pi / 180.0;
      const double el = options.elevation_deg * std::numbers::pi / 180.0;
      const Eigen::Matrix3d rot =
          (Eigen::AngleAxisd(el, Eigen::Vector3d::UnitX()) *
           Eigen::AngleAxisd(az, Eigen::Vector3d::UnitZ()))
              .toRotationMatrix();
      for (const Eigen::Vector3d& v :
           {Eigen::Vector3d(1, 1, 1), Eigen::Vector3d(1, -1, -1), Eigen::Vector3d(-1, 1, -1),
            Eigen::Vector3d(-1, -1, 1)}) {
        vertices_.push_back(rot * v);
      }
    } else {
      throw Error(ErrorCode::kUnsupportedRank,
                  "rendering supports ranks 2 to 4; use the CSV export for rank " +
                      std::to_string(rank));
    }
    double min_x = 1e300, max_x = -1e300, min_y = 1e300, max_y = -1e300;
    for (const auto& v : vertices_) {
      min_x = std::min(min_x, v.x());
      max_x = std::max(max_x, v.x());
      min_y = std::min(min_y, v.y());
      max_y = std::max(max_y, v.y());
    }
    const double span = std::max({max_x - min_x, max_y - min_y, 1e-9});
    const double margin = 0.08 * options.size;
    scale_ = (options.size - 2.0 * margin) / span;
    offset_x_ = margin - min_x * scale_ + 0.5 * ((options.size - 2.0 * margin) - (max_x - min_x) * scale_);
    offset_y_ = margin + max_y * scale_ + 0.5 * ((options.size - 2.0 * margin) - (max_y - min_y) * scale_);
    if (rank == 2) offset_y_ = options.size / 2.0;
  }

  Projected operator()(const Vector& bary) const {
    Eigen::Vector3d p = Eigen::Vector3d::Zero();
    for (int s = 0; s < rank_; ++s) p += bary(s) * vertices_[s];
    return {offset_x_ + scale_ * p.x(), offset_y_ - scale_ * p.y(), p.z()};
  }

 private:
  int rank_;
  std::vector<Eigen::Vector3d> vertices_;
  double scale_ = 1.0;
  double offset_x_ = 0.0;
  double offset_y_ = 0.0;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

struct Dot {
  Projected at;
  const char* cls;
  double radius;
};

}  // namespace

void Scene::validate() const {
  auto check = [&](const Vector& b) {
    if (b.size() != rank || std::abs(b.sum() - 1.0) > 1e-9) {
      throw Error(ErrorCode::kInvalidSpec, "scene point is not barycentric");
    }
  };
  for (const auto& v : roots) check(v);
  for (const auto& v : limit_points) check(v);
  for (const auto& v : quadric_points) check(v);
  for (const auto& line : conic) {
    for (const auto& v : line) check(v);
  }
  for (const auto& [a, b] : lines) {
    check(a);
    check(b);
  }
}

Scene build_scene(const GeometricModule& m, const TransverseHyperplane& h,
                  const RootTable& table, const std::vector<LimitPoint>& limits,
                  const std::string& limit_label, const RenderOptions& options) {
  Scene scene;
  scene.rank = m.rank();
  scene.limit_label = limit_label;
  auto bary = [&](const Vector& x) { return simplex_coordinates(m, h, x); };
  for (const Root& r : table.roots()) {
    scene.roots.push_back(bary(normalize(h, r.coords).coords));
    scene.root_depths.push_back(r.depth);
  }
  for (const auto& p : limits) scene.limit_points.push_back(bary(p.coords));

  const SignatureReport sig = signature(m);
  if (sig.n_negative == 0 && sig.n_zero == 0) return scene;
  if (m.rank() == 3 && sig.n_negative > 0) {
    for (const auto& line : conic_polylines(m, h, options.conic_samples)) {
      std::vector<Vector> out;
      for (const auto& v : line) out.push_back(bary(v));
      scene.conic.push_back(std::move(out));
    }
  } else {
    try {
      for (const auto& p : conic_sample(m, h, options.conic_samples, false)) {
        scene.quadric_points.push_back(bary(p.coords));
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kEmptyQuadric) throw;
    }
  }
  return scene;
}

std::string render_svg(const Scene& scene, const RenderOptions& options) {
  scene.validate();
  const Projector project(scene.rank, options);
  std::ostringstream svg;
  const std::string size = std::to_string(options.size);
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << size
      << "\" height=\"" << size << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n"
      << "<style>.simplex{fill:none;stroke:#2a8a2a;stroke-width:1.5}"
         ".conic{fill:none;stroke:#d62020;stroke-width:1.2}"
         ".quadric{fill:#f08080}.root{fill:#1f4fbf}.limit{fill:#000000}"
         ".line{stroke:#888888;stroke-width:0.6;stroke-dasharray:4 3}"
         ".label{font-family:sans-serif;font-size:14px}</style>\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Simplex edges.
  for (int s = 0; s < scene.rank; ++s) {
    for (int t = s + 1; t < scene.rank; ++t) {
      const Projected a = project(Vector::Unit(scene.rank, s));
      const Projected b = project(Vector::Unit(scene.rank, t));
      svg << "<line class=\"simplex\" x1=\"" << fmt(a.x) << "\" y1=\"" << fmt(a.y)
          << "\" x2=\"" << fmt(b.x) << "\" y2=\"" << fmt(b.y) << "\"/>\n";
    }
  }
  for (int s = 0; s < scene.rank; ++s) {
    const Projected a = project(Vector::Unit(scene.rank, s));
    svg << "<text class=\"label\" x=\"" << fmt(a.x + 6) << "\" y=\"" << fmt(a.y - 6)
        << "\">a" << s << "</text>\n";
  }

  for (const auto& [from, to] : scene.lines) {
    const Projected a = project(from);
    const Projected b = project(to);
    svg << "<line class=\"line\" x1=\"" << fmt(a.x) << "\" y1=\"" << fmt(a.y) << "\" x2=\""
        << fmt(b.x) << "\" y2=\"" << fmt(b.y) << "\"/>\n";
  }

  for (const auto& line : scene.conic) {
    svg << "<polyline class=\"conic\" points=\"";
    for (std::size_t i = 0; i < line.size(); ++i) {
      const Projected p = project(line[i]);
      svg << (i ? " " : "") << fmt(p.x) << ',' << fmt(p.y);
    }
    svg << "\"/>\n";
  }

  std::vector<Dot> dots;
  for (const auto& v : scene.quadric_points) dots.push_back({project(v), "quadric", 1.2});
  for (std::size_t i = 0; i < scene.roots.size(); ++i) {
    const int depth = i < scene.root_depths.size() ? scene.root_depths[i] : 1;
    dots.push_back({project(scene.roots[i]), "root", std::max(1.0, 3.5 - 0.2 * depth)});
  }
  for (const auto& v : scene.limit_points) dots.push_back({project(v), "limit", 1.6});
  if (scene.rank == 4) {
    std::stable_sort(dots.begin(), dots.end(),
                     [](const Dot& a, const Dot& b) { return a.at.depth < b.at.depth; });
  }
  for (const Dot& d : dots) {
    svg << "<circle class=\"" << d.cls << "\" cx=\"" << fmt(d.at.x) << "\" cy=\""
        << fmt(d.at.y) << "\" r=\"" << fmt(d.radius) << "\"/>\n";
  }
  svg << "<text class=\"label\" x=\"10\" y=\"" << options.size - 10 << "\">"
      << scene.roots.size() << " normalized roots, " << scene.limit_points.size() << ' '
      << scene.limit_label << " points</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

void write_scene_csv(std::ostream& out, const Scene& scene) {
  out << "kind,index";
  for (int s = 0; s < scene.rank; ++s) out << ",b" << s;
  out << '\n';
  out.precision(17);
  auto row = [&](const char* kind, std::size_t index, const Vector& v) {
    out << kind << ',' << index;
    for (Eigen::Index s = 0; s < v.size(); ++s) out << ',' << v(s);
    out << '\n';
  };
  for (std::size_t i = 0; i < scene.roots.size(); ++i) row("root", i, scene.roots[i]);
  for (std::size_t i = 0; i < scene.limit_points.size(); ++i) {
    row("limit", i, scene.limit_points[i]);
  }
  std::size_t k = 0;
  for (const auto& line : scene.conic) {
    for (const auto& v : line) row("conic", k++, v);
  }
  for (std::size_t i = 0; i < scene.quadric_points.size(); ++i) {
    row("quadric", i, scene.quadric_points[i]);
  }
}

}  // namespace limitroots
