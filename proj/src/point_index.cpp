#include "limitroots/point_index.hpp"

#include <cassert>
#include <cmath>

namespace limitroots {

PointIndex::PointIndex(double tol, double cell) : tol_(tol), cell_(cell) {
  assert(tol > 0.0 && tol < cell / 2.0);
}

std::size_t PointIndex::KeyHash::operator()(const Key& k) const {
  std::uint64_t h = 1469598103934665603ull;
  for (std::int64_t v : k) {
    h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

PointIndex::Key PointIndex::key_of(const Eigen::VectorXd& p) const {
  Key k(static_cast<std::size_t>(p.size()));
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    k[i] = static_cast<std::int64_t>(std::floor(p(i) / cell_));
  }
  return k;
}

std::optional<std::size_t> PointIndex::find(const Eigen::VectorXd& p) const {
  const Key base = key_of(p);

  // Offsets (-1, 0, +1) per coordinate; only coordinates near a cell wall get
  // a nonzero option, so the common case probes exactly one bucket.
  std::vector<std::vector<int>> options(base.size(), std::vector<int>{0});
  for (std::size_t i = 0; i < base.size(); ++i) {
    const double offset = p(i) / cell_ - static_cast<double>(base[i]);
    if (offset * cell_ < tol_) options[i].push_back(-1);
    if ((1.0 - offset) * cell_ < tol_) options[i].push_back(+1);
  }

  std::vector<std::size_t> choice(base.size(), 0);
  Key probe = base;
  while (true) {
    for (std::size_t i = 0; i < base.size(); ++i) probe[i] = base[i] + options[i][choice[i]];
    auto [lo, hi] = buckets_.equal_range(probe);
    for (auto it = lo; it != hi; ++it) {
      const auto& [id, q] = points_[it->second];
      if ((q - p).norm() <= tol_) return id;
    }
    std::size_t i = 0;
    while (i < choice.size() && ++choice[i] == options[i].size()) {
      choice[i] = 0;
      ++i;
    }
    if (i == choice.size()) break;
  }
  return std::nullopt;
}

std::optional<std::size_t> PointIndex::insert_if_absent(const Eigen::VectorXd& p,
                                                        std::size_t id) {
  if (auto existing = find(p)) return existing;
  buckets_.emplace(key_of(p), points_.size());
  points_.emplace_back(id, p);
  return std::nullopt;
}

}  // namespace limitroots
