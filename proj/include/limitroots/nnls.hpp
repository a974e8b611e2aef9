#pragma once

#include <Eigen/Dense>

namespace limitroots {

// Lawson-Hanson active set solver for min ||A x - b|| subject to x >= 0.
Eigen::VectorXd nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                     int max_iterations = 0);

// Nearest point to the origin in the convex hull of the columns of `points`.
struct HullMinimum {
  Eigen::VectorXd weights;  // nonnegative, summing to 1
  Eigen::VectorXd point;    // points * weights
};

HullMinimum min_norm_in_hull(const Eigen::MatrixXd& points);

}  // namespace limitroots
