#include "contactlab/newton.hpp"

#include <Eigen/SVD>

namespace contactlab {

Eigen::VectorXd truncated_solve(const Eigen::MatrixXd& J, const Eigen::VectorXd& b, double rank_rtol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(J.cols());
  if (sv.size() == 0 || sv(0) == 0.0) return x;
  const double cutoff = rank_rtol * sv(0);
  const Eigen::VectorXd utb = svd.matrixU().transpose() * b;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) x += (utb(i) / sv(i)) * svd.matrixV().col(i);
  return x;
}

NewtonResult damped_newton(const ResidualFunction& fn, const Vec& q0, const NewtonOptions& opts) {
  NewtonResult out;
  out.q = q0;
  Eigen::MatrixXd J;
  fn(out.q, out.residual, &J);
  out.residual_norm = out.residual.norm();

  for (out.iterations = 0; out.iterations < opts.max_iterations; ++out.iterations) {
    if (!std::isfinite(out.residual_norm)) {
      out.status = "non-finite residual";
      return out;
    }
    if (out.residual_norm <= opts.tol) {
      out.converged = true;
      out.status = "converged";
      return out;
    }
    Eigen::VectorXd step = truncated_solve(J, -out.residual, opts.rank_rtol);
    const double len = step.cwiseAbs().maxCoeff();
    if (len > opts.max_step) step *= opts.max_step / len;
    // d/da (|r(q + a step)|^2 / 2) at a = 0
    const double slope = out.residual.dot(J * step);
    if (!(slope < 0.0)) {
      out.status = "no descent direction";
      return out;
    }

    const double f0 = 0.5 * out.residual.squaredNorm();
    double alpha = 1.0;
    bool accepted = false;
    Eigen::VectorXd r_trial;
    Vec q_trial;
    for (int b = 0; b <= opts.max_backtracks; ++b, alpha *= 0.5) {
      q_trial = out.q + alpha * step;
      fn(q_trial, r_trial, nullptr);
      if (r_trial.allFinite() && 0.5 * r_trial.squaredNorm() <= f0 + opts.armijo * alpha * slope) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      out.status = "line search failed";
      return out;
    }
    out.q = q_trial;
    if (r_trial.norm() <= opts.tol) {
      out.residual = r_trial;
      out.residual_norm = r_trial.norm();
      out.converged = true;
      out.status = "converged";
      ++out.iterations;
      return out;
    }
    fn(out.q, out.residual, &J);
    out.residual_norm = out.residual.norm();
  }
  out.converged = out.residual_norm <= opts.tol;
  out.status = out.converged ? "converged" : "iteration limit";
  return out;
}

}  // namespace contactlab
