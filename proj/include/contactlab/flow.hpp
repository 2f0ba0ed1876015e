#ifndef CONTACTLAB_FLOW_HPP
#define CONTACTLAB_FLOW_HPP

#include "contactlab/contact_field.hpp"

namespace contactlab {

struct IntegratorSettings {
  int steps_per_unit_time{2000};
  int min_steps{1};

  int steps_for(double duration) const {
    const double n = std::ceil(std::abs(duration) * steps_per_unit_time);
    return std::max(min_steps, static_cast<int>(n));
  }
};

/// Terminal state of the contact flow together with its first variations.
template <typename Scalar>
struct FlowState {
  ContactPoint<Scalar> point;
  Scalar g{0};
  Vector<Scalar> grad_g;
  Matrix<Scalar> jacobian;
  Scalar t{0};
};

namespace detail {

// Packed state: [q (d) | g | grad_g (d) | vec(Dphi) column-major (d*d)], or just [q | g].
template <typename Scalar, int Dim, bool Variations>
using Packed = Eigen::Matrix<Scalar, Variations ? 2 * Dim + 1 + Dim * Dim : Dim + 1, 1>;

template <typename Scalar, int Dim, bool Variations>
Packed<Scalar, Dim, Variations> packed_rhs(const HamiltonianSpec& H, const Packed<Scalar, Dim, Variations>& s,
                                           Scalar t) {
  constexpr int n = (Dim - 1) / 2;
  const Vector<Scalar, Dim> q = s.template head<Dim>();
  const auto jet = H.jet(q, t, Variations ? 2 : 1);
  Packed<Scalar, Dim, Variations> out;
  out.template head<Dim>() = contact_vector_field(jet, q, n);
  out(Dim) = jet.grad(2 * n);
  if constexpr (Variations) {
    Eigen::Map<const Eigen::Matrix<Scalar, Dim, Dim>> J(s.data() + 2 * Dim + 1);
    Eigen::Map<Eigen::Matrix<Scalar, Dim, Dim>> dJ(out.data() + 2 * Dim + 1);
    const Matrix<Scalar, Dim> DX = contact_vector_field_jacobian(jet, q, n);
    out.template segment<Dim>(Dim + 1).noalias() = J.transpose() * jet.hess.row(2 * n).transpose();
    dJ.noalias() = DX * J;
  }
  return out;
}

template <typename Scalar, int Dim, bool Variations>
void integrate(const HamiltonianSpec& H, FlowState<Scalar>& out, Scalar t0, Scalar t1,
               const IntegratorSettings& opts) {
  using State = Packed<Scalar, Dim, Variations>;
  State s = State::Zero();
  s.template head<Dim>() = out.point.coords();
  if constexpr (Variations)
    for (int i = 0; i < Dim; ++i) s(2 * Dim + 1 + i * Dim + i) = Scalar(1);

  const int steps = opts.steps_for(static_cast<double>(t1 - t0));
  const Scalar dt = (t1 - t0) / Scalar(steps);
  const Scalar half = dt / 2;
  Scalar t = t0;
  for (int i = 0; i < steps; ++i) {
    const State k1 = packed_rhs<Scalar, Dim, Variations>(H, s, t);
    const State k2 = packed_rhs<Scalar, Dim, Variations>(H, s + half * k1, t + half);
    const State k3 = packed_rhs<Scalar, Dim, Variations>(H, s + half * k2, t + half);
    const State k4 = packed_rhs<Scalar, Dim, Variations>(H, s + dt * k3, t + dt);
    s += (dt / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
    t = t0 + Scalar(i + 1) * dt;
    if (!s.allFinite()) throw IntegrationError("non-finite flow state", static_cast<double>(t));
  }

  out.point = ContactPoint<Scalar>::from_coords(s.template head<Dim>(), out.point.periodic_z);
  out.g = s(Dim);
  if constexpr (Variations) {
    out.grad_g = s.template segment<Dim>(Dim + 1);
    out.jacobian = Eigen::Map<const Eigen::Matrix<Scalar, Dim, Dim>>(s.data() + 2 * Dim + 1);
  }
}

template <typename Scalar, bool Variations>
void integrate_dispatch(const HamiltonianSpec& H, FlowState<Scalar>& out, Scalar t0, Scalar t1,
                        const IntegratorSettings& opts) {
  static_assert(kMaxHalfDim == 3, "extend the dimension dispatch");
  switch (H.n()) {
    case 1: return integrate<Scalar, 3, Variations>(H, out, t0, t1, opts);
    case 2: return integrate<Scalar, 5, Variations>(H, out, t0, t1, opts);
    case 3: return integrate<Scalar, 7, Variations>(H, out, t0, t1, opts);
    default: throw std::invalid_argument("unsupported dimension");
  }
}

}  // namespace detail

/// Integrates q' = X_H, g' = H_z, (grad g)' = Dphi^T grad H_z, (Dphi)' = DX_H Dphi with
/// classical RK4 at a fixed number of steps. Backward integration (t1 < t0) is allowed.
/// Points outside the support of H are returned unchanged without integration.
/// With `variations` false only the point and g are evolved; grad_g and jacobian are left empty.
template <typename Scalar>
FlowState<Scalar> flow(const HamiltonianSpec& H, const ContactPoint<Scalar>& q0, Scalar t0, Scalar t1,
                       const IntegratorSettings& opts = {}, bool variations = true) {
  const int d = H.dim();
  if (q0.dim() != d) throw std::invalid_argument("flow: point dimension does not match Hamiltonian");
  if (!q0.finite()) throw std::invalid_argument("flow: initial point is not finite");

  FlowState<Scalar> out;
  out.point = q0;
  out.t = t1;
  if (variations) {
    out.grad_g = Vector<Scalar>::Zero(d);
    out.jacobian = Matrix<Scalar>::Identity(d, d);
  }
  if (t0 == t1 || !H.support().contains(q0.coords().template cast<double>(), H.n())) return out;

  if (variations)
    detail::integrate_dispatch<Scalar, true>(H, out, t0, t1, opts);
  else
    detail::integrate_dispatch<Scalar, false>(H, out, t0, t1, opts);
  return out;
}

/// Step-halving error estimate of the terminal point and g (max-norm difference).
template <typename Scalar>
Scalar flow_error_estimate(const HamiltonianSpec& H, const ContactPoint<Scalar>& q0, Scalar t0, Scalar t1,
                           const IntegratorSettings& opts = {}) {
  IntegratorSettings fine = opts;
  fine.steps_per_unit_time *= 2;
  fine.min_steps *= 2;
  const auto a = flow(H, q0, t0, t1, opts, false);
  const auto b = flow(H, q0, t0, t1, fine, false);
  using std::abs;
  return std::max((a.point.coords() - b.point.coords()).cwiseAbs().maxCoeff(), abs(a.g - b.g));
}

}  // namespace contactlab

#endif  // CONTACTLAB_FLOW_HPP
