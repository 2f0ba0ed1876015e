#ifndef CONTACTLAB_TYPES_HPP
#define CONTACTLAB_TYPES_HPP

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

namespace contactlab {

/// Largest supported half-dimension n. Small dense objects live on the stack
/// with this bound, so the inner integration loop never touches the heap.
inline constexpr int kMaxHalfDim = 3;
inline constexpr int kMaxDim = 2 * kMaxHalfDim + 1;

/// Dense vector of packed coordinates. `Dim` may be fixed (2n+1) for the hot
/// integration path; the dynamic default is bounded by kMaxDim.
template <typename Scalar, int Dim = Eigen::Dynamic>
using Vector = Eigen::Matrix<Scalar, Dim, 1, 0, (Dim == Eigen::Dynamic ? kMaxDim : Dim), 1>;

template <typename Scalar, int Dim = Eigen::Dynamic>
using Matrix = Eigen::Matrix<Scalar, Dim, Dim, 0, (Dim == Eigen::Dynamic ? kMaxDim : Dim),
                             (Dim == Eigen::Dynamic ? kMaxDim : Dim)>;

using Vec = Vector<double>;
using Mat = Matrix<double>;

/// Raised when a Hamiltonian or vector field produces a non-finite value.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when the flow integrator hits a non-finite state.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double time)
      : std::runtime_error(what + " at t=" + std::to_string(time)), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

/// Raised when an operation's documented precondition does not hold.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Distance between two z values, modulo 1 when the z direction is a circle.
inline double z_distance(double z1, double z2, bool periodic_z) {
  double d = std::abs(z1 - z2);
  if (periodic_z) {
    d = std::fmod(d, 1.0);
    d = std::min(d, 1.0 - d);
  }
  return d;
}

/// A point (x, y, z) of R^{2n+1}, or of R^{2n} x S^1 when `periodic_z` is set.
/// z is always the real lift; equality on the circle is tested modulo 1.
template <typename Scalar>
struct ContactPoint {
  Vector<Scalar> x;
  Vector<Scalar> y;
  Scalar z{0};
  bool periodic_z{false};

  ContactPoint() = default;
  ContactPoint(Vector<Scalar> x_, Vector<Scalar> y_, Scalar z_, bool periodic = false)
      : x(std::move(x_)), y(std::move(y_)), z(z_), periodic_z(periodic) {
    if (x.size() != y.size()) throw std::invalid_argument("ContactPoint: x and y differ in length");
  }

  int n() const { return static_cast<int>(x.size()); }
  int dim() const { return 2 * n() + 1; }

  /// Packed coordinates (x_1..x_n, y_1..y_n, z).
  Vector<Scalar> coords() const {
    Vector<Scalar> q(dim());
    q.head(n()) = x;
    q.segment(n(), n()) = y;
    q(2 * n()) = z;
    return q;
  }

  static ContactPoint from_coords(const Vector<Scalar>& q, bool periodic = false) {
    const int n = static_cast<int>(q.size() - 1) / 2;
    return ContactPoint(q.head(n), q.segment(n, n), q(2 * n), periodic);
  }

  bool finite() const {
    using std::isfinite;
    return x.allFinite() && y.allFinite() && isfinite(z);
  }
};

using Point = ContactPoint<double>;

/// Convenience constructor for n = 1.
inline Point make_point(double x, double y, double z, bool periodic = false) {
  Vec xv(1), yv(1);
  xv << x;
  yv << y;
  return Point(xv, yv, z, periodic);
}

/// Sup-norm geometric distance; z compared modulo 1 on the circle.
inline double geometric_distance(const Point& a, const Point& b) {
  double d = z_distance(a.z, b.z, a.periodic_z || b.periodic_z);
  if (a.n() > 0) {
    d = std::max(d, (a.x - b.x).cwiseAbs().maxCoeff());
    d = std::max(d, (a.y - b.y).cwiseAbs().maxCoeff());
  }
  return d;
}

}  // namespace contactlab

#endif  // CONTACTLAB_TYPES_HPP
