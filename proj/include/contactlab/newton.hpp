#ifndef CONTACTLAB_NEWTON_HPP
#define CONTACTLAB_NEWTON_HPP

#include "contactlab/types.hpp"

#include <functional>
#include <limits>
#include <string>

namespace contactlab {

struct NewtonOptions {
  double tol{1e-9};           // stop when ||r||_2 <= tol
  int max_iterations{50};
  double armijo{1e-4};        // sufficient-decrease constant on ||r||^2 / 2
  int max_backtracks{30};
  double rank_rtol{1e-8};     // singular values below rank_rtol * sigma_max are dropped
  double max_step{std::numeric_limits<double>::infinity()};  // sup-norm cap on a single step
};

struct NewtonResult {
  Vec q;
  Eigen::VectorXd residual;
  double residual_norm{std::numeric_limits<double>::infinity()};
  int iterations{0};
  bool converged{false};
  std::string status;
};

/// Residual callback: fills r, and J when `J` is non-null. r may be longer than q
/// (stacked systems are solved in the least-squares sense).
using ResidualFunction = std::function<void(const Vec& q, Eigen::VectorXd& r, Eigen::MatrixXd* J)>;

/// Damped Gauss-Newton with a truncated-SVD (minimum-norm) step and Armijo
/// backtracking. Rank-deficient directions, such as the Reeb direction of a
/// z-independent map or the tangent of a circle of solutions, receive no step.
NewtonResult damped_newton(const ResidualFunction& fn, const Vec& q0, const NewtonOptions& opts = {});

/// Minimum-norm least-squares solution of J x = b with relative rank truncation.
Eigen::VectorXd truncated_solve(const Eigen::MatrixXd& J, const Eigen::VectorXd& b, double rank_rtol);

}  // namespace contactlab

#endif  // CONTACTLAB_NEWTON_HPP
