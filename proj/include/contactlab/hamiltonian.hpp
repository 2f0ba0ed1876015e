#ifndef CONTACTLAB_HAMILTONIAN_HPP
#define CONTACTLAB_HAMILTONIAN_HPP

#include "contactlab/types.hpp"

#include <numbers>
#include <string>
#include <string_view>
#include <vector>

namespace contactlab {

enum class Family { RadialTwist, ZPerturbedTwist, AnisotropicTwist, HamiltonianLift };

std::string_view family_name(Family f);
Family family_from_name(std::string_view name);  // throws std::invalid_argument
const std::vector<std::string>& family_parameter_names(Family f);
const std::vector<double>& family_parameter_defaults(Family f);

/// Planar support {a|x|^2 + b|y|^2 < 1} x (all z). An empty support means H == 0.
struct Support {
  double a{1.0};
  double b{1.0};
  bool empty{false};

  template <typename Scalar, int Dim>
  Scalar quadratic(const Vector<Scalar, Dim>& q, int n) const {
    return a * q.head(n).squaredNorm() + b * q.segment(n, n).squaredNorm();
  }
  /// 1 - u: positive in the open support, zero on its boundary.
  double depth(const Vec& q, int n) const { return empty ? -1.0 : 1.0 - quadratic(q, n); }
  bool contains(const Vec& q, int n) const { return depth(q, n) > 0.0; }
  double half_width_x() const { return 1.0 / std::sqrt(a); }
  double half_width_y() const { return 1.0 / std::sqrt(b); }
};

/// H, its gradient and (optionally) its Hessian at one point, in packed coordinates.
template <typename Scalar, int Dim = Eigen::Dynamic>
struct HamiltonianJet {
  Scalar value{0};
  Vector<Scalar, Dim> grad;
  Matrix<Scalar, Dim> hess;
};

/// A closed-form contact Hamiltonian from the catalog
///
///   H(x, y, z) = h(u) * (1 + eps sin(2 pi z)) * (1 + shear x_1),
///   u = a|x|^2 + b|y|^2,  h(u) = c (1 - u)^p for u < 1, 0 otherwise.
///
/// Each family fixes some of these knobs. All families are autonomous.
class HamiltonianSpec {
 public:
  HamiltonianSpec(Family family, std::vector<double> params, int n);

  Family family() const { return family_; }
  const std::vector<double>& params() const { return params_; }
  double param(std::string_view name) const;
  int n() const { return n_; }
  int dim() const { return 2 * n_ + 1; }

  const Support& support() const { return support_; }
  bool positive() const { return positive_; }
  bool time_dependent() const { return false; }
  bool z_periodic() const { return true; }
  bool z_independent() const { return epsilon_ == 0.0; }
  bool vanishes() const { return support_.empty; }

  double amplitude() const { return amplitude_; }
  int exponent() const { return exponent_; }

  /// order 0: value only; 1: + gradient; 2: + Hessian.
  template <typename Scalar, int Dim>
  HamiltonianJet<Scalar, Dim> jet(const Vector<Scalar, Dim>& q, Scalar t, int order = 2) const;

  template <typename Scalar, int Dim>
  Scalar value(const Vector<Scalar, Dim>& q, Scalar t) const {
    return jet(q, t, 0).value;
  }

 private:
  template <typename Scalar>
  void profile(Scalar u, Scalar& h, Scalar& dh, Scalar& ddh) const;

  Family family_;
  std::vector<double> params_;
  int n_;
  double amplitude_{0};
  int exponent_{3};
  double epsilon_{0};
  double shear_{0};
  Support support_;
  bool positive_{false};
};

template <typename Scalar>
void HamiltonianSpec::profile(Scalar u, Scalar& h, Scalar& dh, Scalar& ddh) const {
  h = dh = ddh = Scalar(0);
  if (!(u < Scalar(1))) return;
  const Scalar w = Scalar(1) - u;
  // w^(p-2), w^(p-1), w^p without pow()
  Scalar wp2(1), wp1(1), wp(1);
  for (int i = 0; i < exponent_; ++i) {
    if (i < exponent_ - 2) wp2 *= w;
    if (i < exponent_ - 1) wp1 *= w;
    wp *= w;
  }
  const double c = amplitude_;
  const int p = exponent_;
  h = c * wp;
  if (p >= 1) dh = -c * p * wp1;
  if (p >= 2) ddh = c * p * (p - 1) * wp2;
}

template <typename Scalar, int Dim>
HamiltonianJet<Scalar, Dim> HamiltonianSpec::jet(const Vector<Scalar, Dim>& q, Scalar t, int order) const {
  using std::cos;
  using std::sin;
  (void)t;
  const int n = n_;
  const int d = 2 * n + 1;
  HamiltonianJet<Scalar, Dim> out;
  if (order >= 1) out.grad = Vector<Scalar, Dim>::Zero(d);
  if (order >= 2) out.hess = Matrix<Scalar, Dim>::Zero(d, d);
  if (support_.empty) return out;

  const Scalar u = support_.quadratic(q, n);
  Scalar h, dh, ddh;
  profile(u, h, dh, ddh);
  if (h == Scalar(0) && dh == Scalar(0) && ddh == Scalar(0)) return out;

  constexpr double two_pi = 2.0 * std::numbers::pi;
  Scalar sz(0), cz(0);
  if (epsilon_ != 0.0) {
    const Scalar z = q(2 * n);
    sz = sin(two_pi * z);
    cz = cos(two_pi * z);
  }
  const Scalar Z = Scalar(1) + epsilon_ * sz;
  const Scalar dZ = epsilon_ * two_pi * cz;
  const Scalar ddZ = -epsilon_ * two_pi * two_pi * sz;
  const Scalar S = Scalar(1) + shear_ * q(0);
  const Scalar dS(shear_);
  const Scalar G = Z * S;

  out.value = h * G;
  if (order < 1) return out;

  // grad u = (2a x, 2b y, 0); grad h = h' grad u
  Vector<Scalar, Dim> du = Vector<Scalar, Dim>::Zero(d);
  const Scalar two_a(2.0 * support_.a);
  const Scalar two_b(2.0 * support_.b);
  du.head(n) = two_a * q.head(n);
  du.segment(n, n) = two_b * q.segment(n, n);
  Vector<Scalar, Dim> dG = Vector<Scalar, Dim>::Zero(d);
  dG(2 * n) = dZ * S;
  dG(0) += Z * dS;

  out.grad = (dh * G) * du + h * dG;
  if (order < 2) return out;

  // Hess h = h'' du du^T + h' Hess u
  Matrix<Scalar, Dim> hh = ddh * (du * du.transpose());
  for (int i = 0; i < n; ++i) {
    hh(i, i) += dh * two_a;
    hh(n + i, n + i) += dh * two_b;
  }
  Matrix<Scalar, Dim> hG = Matrix<Scalar, Dim>::Zero(d, d);
  hG(2 * n, 2 * n) = ddZ * S;
  hG(2 * n, 0) += dZ * dS;
  hG(0, 2 * n) += dZ * dS;

  const Vector<Scalar, Dim> gh = dh * du;
  out.hess = G * hh + gh * dG.transpose() + dG * gh.transpose() + h * hG;
  return out;
}

}  // namespace contactlab

#endif  // CONTACTLAB_HAMILTONIAN_HPP
