// Closed-form and finite-difference oracles shared by the tests. Nothing here
// calls into the solver paths it is used to check.
#ifndef CONTACTLAB_TESTS_ORACLES_HPP
#define CONTACTLAB_TESTS_ORACLES_HPP

#include "contactlab/contact_map.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using std::numbers::pi;
using contactlab::Point;
using contactlab::Vec;

// h(s) = pi (1 - s)^2 on s <= 1
inline double quad_h(double s) { return s < 1 ? pi * (1 - s) * (1 - s) : 0.0; }
inline double quad_dh(double s) { return s < 1 ? -2 * pi * (1 - s) : 0.0; }

struct Profile {
  std::function<double(double)> h, dh;
};

inline Profile quadratic_profile(double c = pi) {
  return {[c](double s) { return s < 1 ? c * (1 - s) * (1 - s) : 0.0; },
          [c](double s) { return s < 1 ? -2 * c * (1 - s) : 0.0; }};
}

/// Time-t map of the radial Hamiltonian h(x^2 + y^2), n = 1: a rotation by 2 h'(s) t
/// with z advanced by h t - 2 h' * integral of y^2.
inline Point radial_flow(const Profile& p, const Point& q, double t) {
  const double x = q.x(0), y = q.y(0);
  const double s = x * x + y * y;
  const double w = 2 * p.dh(s);
  const double c = std::cos(w * t), sn = std::sin(w * t);
  double y2;
  if (w == 0) {
    y2 = y * y * t;
  } else {
    const double th = std::atan2(y, x);
    y2 = s * (t / 2 - (std::sin(2 * (th + w * t)) - std::sin(2 * th)) / (4 * w));
  }
  return contactlab::make_point(x * c - y * sn, x * sn + y * c, q.z + p.h(s) * t - 2 * p.dh(s) * y2, q.periodic_z);
}

struct Orbit {
  double s;       // squared planar radius
  double action;  // per k iterations
};

/// Translated-point circles of phi^k for h = c (1 - s)^2: 4 c k (1 - s) in 2 pi Z,
/// with action k (h - s h'); the axis has action k h(0).
inline std::vector<Orbit> quadratic_orbits(int k, double c = pi) {
  std::vector<Orbit> out{{0.0, k * c}};
  for (int m = 1;; ++m) {
    const double one_minus_s = 2 * pi * m / (4 * c * k);
    if (one_minus_s >= 1) break;
    const double s = 1 - one_minus_s;
    out.push_back({s, k * (c * one_minus_s * one_minus_s + 2 * c * s * one_minus_s)});
  }
  return out;
}

/// Central differences of f: R^d -> R^m at q.
inline Eigen::MatrixXd jacobian_fd(const std::function<Eigen::VectorXd(const Vec&)>& f, const Vec& q,
                                   double h = 1e-5) {
  const Eigen::VectorXd f0 = f(q);
  Eigen::MatrixXd J(f0.size(), q.size());
  for (Eigen::Index c = 0; c < q.size(); ++c) {
    Vec qp = q, qm = q;
    qp(c) += h;
    qm(c) -= h;
    J.col(c) = (f(qp) - f(qm)) / (2 * h);
  }
  return J;
}

inline double rel_err(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).cwiseAbs().maxCoeff() / std::max(1.0, b.cwiseAbs().maxCoeff());
}

inline Point random_point(std::mt19937_64& rng, double half, bool periodic = false) {
  std::uniform_real_distribution<double> u(-half, half), z(0.0, 1.0);
  return contactlab::make_point(u(rng), u(rng), z(rng), periodic);
}

inline Point random_disk_point(std::mt19937_64& rng, double radius, bool periodic = false) {
  for (;;) {
    Point q = random_point(rng, radius, periodic);
    if (q.x.squaredNorm() + q.y.squaredNorm() < radius * radius) return q;
  }
}

/// F(x, y) = integral of phi_2 d(phi_1) - y dx from (x0, y) to (x, y), x0 on the boundary of
/// the support (where F = 0 and the integrand stops being smooth), by composite Simpson on
/// the x-line. Uses only the image and Jacobian of the map.
inline double lift_primitive_simpson(const contactlab::ContactMap& m, const Point& q, double x0, int intervals = 400) {
  const double h = (q.x(0) - x0) / intervals;
  double acc = 0.0;
  for (int i = 0; i <= intervals; ++i) {
    Point s = q;
    s.x(0) = x0 + i * h;
    const auto e = contactlab::evaluate(m, s, true);
    const double f = e.image.y(0) * e.jacobian(0, 0) - s.y(0);
    const double w = (i == 0 || i == intervals) ? 1 : (i % 2 ? 4 : 2);
    acc += w * f;
  }
  return acc * h / 3;
}

/// Left end of the x-line through (y) inside the elliptic support of half widths hx, hy
/// (n = 1).
inline double support_entry(double hx, double hy, double y) {
  const double rest = 1.0 - (y * y) / (hy * hy);
  return rest > 0.0 ? -hx * std::sqrt(rest) : 0.0;
}

}  // namespace oracle

#endif  // CONTACTLAB_TESTS_ORACLES_HPP
