#include "limitroots/roots.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

namespace limitroots {

namespace {

// Grid spacing for the root index; large enough that keys stay within
// int64 up to kCoordinateLimit.
constexpr double kRootCell = 1e-6;

}  // namespace

RootTable::RootTable(int rank, int max_depth)
    : rank_(rank),
      max_depth_(max_depth),
      level_begin_(static_cast<std::size_t>(max_depth) + 1, 0),
      index_(kRootDedupTol, kRootCell) {}

std::size_t RootTable::level_begin(int depth) const {
  return depth <= 1 ? 0 : level_begin_[std::min(depth, max_depth_ + 1) - 1];
}

std::span<const Root> RootTable::level(int depth) const {
  if (depth < 1 || depth > max_depth_) return {};
  const std::size_t begin = level_begin_[depth - 1];
  const std::size_t end = level_begin_[depth];
  return std::span<const Root>(roots_).subspan(begin, end - begin);
}

std::size_t RootTable::count_up_to(int depth) const {
  if (depth < 1) return 0;
  return level_begin_[std::min(depth, max_depth_)];
}

std::optional<std::size_t> RootTable::find(const Vector& coords) const {
  return index_.find(coords);
}

Witness RootTable::witness(std::size_t id) const {
  Witness w;
  long cur = static_cast<long>(id);
  while (roots_[cur].parent >= 0) {
    w.word.push_back(roots_[cur].generator);
    cur = roots_[cur].parent;
  }
  w.simple = roots_[cur].generator;
  return w;
}

RootTable enumerate(const GeometricModule& m, int max_depth) {
  if (max_depth < 1) throw Error(ErrorCode::kInvalidSpec, "max_depth must be >= 1");
  if (!m.is_basis()) {
    throw Error(ErrorCode::kInvalidSpec, "root enumeration requires Delta to be a basis");
  }
  const int n = m.rank();
  const Matrix& g = m.gram();
  RootTable table(n, max_depth);

  for (int s = 0; s < n; ++s) {
    Root r;
    r.coords = Vector::Unit(n, s);
    r.depth = 1;
    r.generator = s;
    table.index_.insert_if_absent(r.coords, table.roots_.size());
    table.roots_.push_back(std::move(r));
  }
  table.level_begin_[1] = table.roots_.size();

  for (int depth = 2; depth <= max_depth; ++depth) {
    const std::size_t begin = table.level_begin_[depth - 2];
    const std::size_t end = table.level_begin_[depth - 1];
    for (int s = 0; s < n; ++s) {
      for (std::size_t p = begin; p < end; ++p) {
        const Vector& parent = table.roots_[p].coords;
        const double b = g.row(s).dot(parent);
        if (b >= -kClassTol) continue;
        Vector child = parent;
        child(s) -= 2.0 * b;
        if (std::abs(child(s)) > kCoordinateLimit) {
          throw Error(ErrorCode::kDepthOverflow,
                      "root coordinates exceed 1e12 at depth " + std::to_string(depth));
        }
        if (table.index_.insert_if_absent(child, table.roots_.size())) continue;
        Root r;
        r.coords = std::move(child);
        r.depth = depth;
        r.parent = static_cast<long>(p);
        r.generator = s;
        table.roots_.push_back(std::move(r));
      }
    }
    table.level_begin_[depth] = table.roots_.size();
  }
  return table;
}

KappaReport kappa_lambda(const GeometricModule& m, const RootTable& table) {
  const Matrix& g = m.gram();
  std::vector<double> values;
  double kappa = 1.0;
  bool any = false;
  for (const Root& r : table.roots()) {
    const Vector pairings = g * r.coords;
    for (Eigen::Index s = 0; s < pairings.size(); ++s) {
      if (r.depth == 1 && r.coords(s) == 1.0) continue;  // B(alpha, alpha)
      const double a = std::abs(pairings(s));
      if (a <= kClassTol) continue;
      any = true;
      kappa = std::min(kappa, a);
      if (a < 1.0 - kClassTol) values.push_back(a);
    }
  }
  if (!any) {
    throw Error(ErrorCode::kAllOrthogonal,
                "every pairing between simple roots and roots vanishes");
  }
  std::sort(values.begin(), values.end());
  std::vector<double> distinct;
  for (double v : values) {
    if (distinct.empty() || v - distinct.back() > kClassTol) distinct.push_back(v);
  }
  KappaReport report;
  report.kappa = kappa;
  report.lambda = 4.0 * kappa * kappa;
  report.sampled_values = std::move(distinct);
  return report;
}

std::vector<DepthNormViolation> audit_depth_norm(const GeometricModule&,
                                                 const RootTable& table,
                                                 const KappaReport& report) {
  std::vector<DepthNormViolation> out;
  for (std::size_t id = 0; id < table.size(); ++id) {
    const Root& r = table[id];
    const double norm2 = r.coords.squaredNorm();
    const double bound = 1.0 + report.lambda * (r.depth - 1);
    if (norm2 - bound < -1e-9) out.push_back({id, norm2, bound});
  }
  return out;
}

std::optional<Witness> descend_to_simple(const GeometricModule& m, const Vector& v,
                                         int max_steps) {
  if (!m.is_basis()) {
    throw Error(ErrorCode::kInvalidSpec, "descent requires Delta to be a basis");
  }
  const int n = m.rank();
  const Matrix& g = m.gram();
  Vector cur = v;
  Witness w;
  for (int step = 0; step <= max_steps; ++step) {
    const double scale = std::max(1.0, cur.cwiseAbs().maxCoeff());
    if (cur.minCoeff() < -kRootDedupTol * scale) return std::nullopt;
    for (int s = 0; s < n; ++s) {
      if ((cur - Vector::Unit(n, s)).norm() <= kRootDedupTol * scale) {
        w.simple = s;
        return w;
      }
    }
    const Vector pairings = g * cur;
    int down = -1;
    for (int s = 0; s < n; ++s) {
      if (pairings(s) > kClassTol) {
        down = s;
        break;
      }
    }
    if (down < 0) return std::nullopt;
    cur(down) -= 2.0 * pairings(down);
    w.word.push_back(down);
  }
  return std::nullopt;
}

Vector apply_word(const GeometricModule& m, const Word& w, const Vector& v) {
  Vector out = v;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out = reflect_simple(m, *it, out);
  return out;
}

void write_roots_csv(std::ostream& out, const GeometricModule& m, const RootTable& table) {
  const int n = table.rank();
  out << "id,depth";
  for (int s = 0; s < n; ++s) out << ",c" << s;
  out << ",l1_norm,q_normalized\n";
  out.precision(17);
  for (std::size_t id = 0; id < table.size(); ++id) {
    const Root& r = table[id];
    const double l1 = r.coords.sum();
    out << id << ',' << r.depth;
    for (int s = 0; s < n; ++s) out << ',' << r.coords(s);
    out << ',' << l1 << ',' << quadratic(m, r.coords / l1) << '\n';
  }
}

}  // namespace limitroots
