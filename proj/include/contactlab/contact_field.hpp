#ifndef CONTACTLAB_CONTACT_FIELD_HPP
#define CONTACTLAB_CONTACT_FIELD_HPP

#include "contactlab/hamiltonian.hpp"

namespace contactlab {

/// alpha = dz - y.dx evaluated on a tangent vector v at q.
template <typename DerivedQ, typename DerivedV>
typename DerivedQ::Scalar contact_form(const Eigen::MatrixBase<DerivedQ>& q, const Eigen::MatrixBase<DerivedV>& v, int n) {
  return v(2 * n) - q.segment(n, n).dot(v.head(n));
}

/// X_H = (-H_y, H_x + y H_z, H - y.H_y) from a first-order jet.
/// alpha(X_H) = H and L_{X_H} alpha = H_z alpha.
template <typename Scalar, int Dim>
Vector<Scalar, Dim> contact_vector_field(const HamiltonianJet<Scalar, Dim>& jet, const Vector<Scalar, Dim>& q,
                                         int n) {
  const int d = 2 * n + 1;
  const auto y = q.segment(n, n);
  const auto Hx = jet.grad.head(n);
  const auto Hy = jet.grad.segment(n, n);
  const Scalar Hz = jet.grad(2 * n);
  Vector<Scalar, Dim> X(d);
  X.head(n) = -Hy;
  X.segment(n, n) = Hx + Hz * y;
  X(2 * n) = jet.value - y.dot(Hy);
  return X;
}

template <typename Scalar>
Vector<Scalar> contact_vector_field(const HamiltonianSpec& H, const Vector<Scalar>& q, Scalar t) {
  const auto jet = H.jet(q, t, 1);
  Vector<Scalar> X = contact_vector_field(jet, q, H.n());
  if (!X.allFinite()) throw EvaluationError("contact vector field is not finite");
  return X;
}

template <typename Scalar>
Vector<Scalar> contact_vector_field(const HamiltonianSpec& H, const ContactPoint<Scalar>& q, Scalar t) {
  return contact_vector_field(H, q.coords(), t);
}

/// DX_H from a second-order jet.
template <typename Scalar, int Dim>
Matrix<Scalar, Dim> contact_vector_field_jacobian(const HamiltonianJet<Scalar, Dim>& jet,
                                                  const Vector<Scalar, Dim>& q, int n) {
  const int d = 2 * n + 1;
  const auto y = q.segment(n, n);
  const auto& Hess = jet.hess;
  Matrix<Scalar, Dim> D(d, d);
  D.topRows(n) = -Hess.middleRows(n, n);
  D.middleRows(n, n) = Hess.topRows(n) + y * Hess.row(2 * n);
  D.row(2 * n) = jet.grad.transpose() - y.transpose() * Hess.middleRows(n, n);
  const Scalar Hz = jet.grad(2 * n);
  for (int i = 0; i < n; ++i) {
    D(n + i, n + i) += Hz;            // d(y_i H_z)/dy_i
    D(2 * n, n + i) -= jet.grad(n + i);  // d(-y.H_y)/dy_i
  }
  return D;
}

/// The Reeb flow of dz - y.dx: (x, y, z) -> (x, y, z + s).
template <typename Scalar>
ContactPoint<Scalar> reeb_translate(const ContactPoint<Scalar>& q, Scalar s) {
  ContactPoint<Scalar> out = q;
  out.z += s;
  return out;
}

}  // namespace contactlab

#endif  // CONTACTLAB_CONTACT_FIELD_HPP
