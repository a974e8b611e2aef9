#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

namespace limitroots {

// Spatial hash for deduplicating points under a Euclidean tolerance.
//
// Points are bucketed on an integer grid of spacing `cell`; a lookup probes
// the point's own cell plus the neighbouring cells along every coordinate
// that lies within `tol` of a cell boundary. Requires tol < cell / 2.
class PointIndex {
 public:
  PointIndex(double tol, double cell);

  // Id of a stored point within tol of p, if any.
  std::optional<std::size_t> find(const Eigen::VectorXd& p) const;

  // Stores p under `id` unless a point within tol already exists, in which
  // case that point's id is returned and nothing is inserted.
  std::optional<std::size_t> insert_if_absent(const Eigen::VectorXd& p, std::size_t id);

  std::size_t size() const { return points_.size(); }
  double tolerance() const { return tol_; }

 private:
  using Key = std::vector<std::int64_t>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const;
  };

  Key key_of(const Eigen::VectorXd& p) const;

  double tol_;
  double cell_;
  std::unordered_multimap<Key, std::size_t, KeyHash> buckets_;
  std::vector<std::pair<std::size_t, Eigen::VectorXd>> points_;
};

}  // namespace limitroots
