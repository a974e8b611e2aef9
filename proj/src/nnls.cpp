#include "limitroots/nnls.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace limitroots {

namespace {

Eigen::VectorXd solve_passive(const Eigen::MatrixXd& a,
                              const Eigen::VectorXd& b,
                              const std::vector<bool>& passive) {
  std::vector<Eigen::Index> cols;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    if (passive[j]) cols.push_back(j);
  }
  Eigen::MatrixXd sub(a.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) sub.col(k) = a.col(cols[k]);
  const Eigen::VectorXd z_sub = sub.colPivHouseholderQr().solve(b);
  Eigen::VectorXd z = Eigen::VectorXd::Zero(a.cols());
  for (std::size_t k = 0; k < cols.size(); ++k) z(cols[k]) = z_sub(k);
  return z;
}

}  // namespace

Eigen::VectorXd nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                     int max_iterations) {
  const Eigen::Index n = a.cols();
  if (max_iterations <= 0) max_iterations = static_cast<int>(30 * n + 30);

  const double tol = 10.0 * std::numeric_limits<double>::epsilon() *
                     static_cast<double>(std::max(a.rows(), n)) *
                     std::max(1.0, a.cwiseAbs().maxCoeff()) *
                     std::max(1.0, b.cwiseAbs().maxCoeff());

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  std::vector<bool> passive(n, false);
  Eigen::VectorXd w = a.transpose() * (b - a * x);

  for (int iter = 0; iter < max_iterations; ++iter) {
    Eigen::Index best = -1;
    double best_w = tol;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!passive[j] && w(j) > best_w) {
        best_w = w(j);
        best = j;
      }
    }
    if (best < 0) break;
    passive[best] = true;

    // Inner loop: keep the passive set feasible.
    for (int inner = 0; inner < max_iterations; ++inner) {
      const Eigen::VectorXd z = solve_passive(a, b, passive);
      bool feasible = true;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[j] && z(j) <= 0.0) feasible = false;
      }
      if (feasible) {
        x = z;
        break;
      }
      double step = 1.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[j] && z(j) <= 0.0) {
          step = std::min(step, x(j) / (x(j) - z(j)));
        }
      }
      x += step * (z - x);
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[j] && x(j) <= tol) {
          passive[j] = false;
          x(j) = 0.0;
        }
      }
    }
    w = a.transpose() * (b - a * x);
  }
  return x;
}

HullMinimum min_norm_in_hull(const Eigen::MatrixXd& points) {
  const Eigen::Index d = points.rows();
  const Eigen::Index k = points.cols();
  double scale = 1.0;
  for (Eigen::Index j = 0; j < k; ++j) {
    scale = std::max(scale, points.col(j).norm());
  }

  // The extra row pulls the weights towards the simplex; rescaling the
  // minimiser afterwards recovers the exact nearest hull point.
  Eigen::MatrixXd a(d + 1, k);
  a.topRows(d) = points;
  a.row(d).setConstant(scale);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(d + 1);
  b(d) = scale;

  Eigen::VectorXd c = nnls(a, b);
  const double total = c.sum();
  if (total > 0.0) {
    c /= total;
  } else {
    c.setConstant(1.0 / static_cast<double>(k));
  }
  return {c, points * c};
}

}  // namespace limitroots
