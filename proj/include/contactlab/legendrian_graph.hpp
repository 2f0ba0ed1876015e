#ifndef CONTACTLAB_LEGENDRIAN_GRAPH_HPP
#define CONTACTLAB_LEGENDRIAN_GRAPH_HPP

#include "contactlab/translated_points.hpp"

#include <string>
#include <vector>

namespace contactlab {

/// Point of the 1-jet space: base (x, Y, z), fiber momenta p, and theta.
struct JetGraphPoint {
  Vec base;
  Vec p;
  double theta{0.0};
};

/// Gamma(q) = ((x, phi_2, z), (phi_2 - e^g y, x - phi_1, e^g - 1), x.phi_2 - phi_1.phi_2 + phi_3 - z).
JetGraphPoint gamma(const ContactMap& m, const Point& q);
/// Same, from an already computed evaluation (which may be altered on purpose).
JetGraphPoint gamma(const Point& q, const MapEvaluation& e);

/// (4n+3) x (2n+1) derivative of gamma: base rows, then p rows, then theta.
Eigen::MatrixXd gamma_jacobian(const ContactMap& m, const Point& q);
Eigen::MatrixXd gamma_jacobian(const Point& q, const MapEvaluation& e);

/// max over coordinate directions v of |dtheta(v) - p . dbase(v)|.
double legendrian_residual(const ContactMap& m, const Point& q);
double legendrian_residual(const Point& q, const MapEvaluation& e);

struct ZeroWallPoint {
  int orbit_id{-1};
  Point point;
  double p_norm{0.0};
  double theta{0.0};
  double action{0.0};
  bool passed{false};
};

struct ZeroWallDiscrepancy {
  Point point;
  double p_norm{0.0};
  double theta{0.0};
  std::string reason;
};

struct ZeroWallOptions {
  double tol{1e-9};
  bool converse{true};              // Newton on p(Gamma) from the census seed grid
  std::size_t samples_per_cluster{64};  // census members checked per (cluster, k), besides the representative
};

struct ZeroWallReport {
  int k{1};
  double tol{0.0};
  std::vector<ZeroWallPoint> points;
  double max_p_norm{0.0};
  double max_theta_error{0.0};
  std::size_t converse_zeros{0};
  std::size_t converse_outside_window{0};  // zeros with z outside the seed window, not compared
  std::vector<ZeroWallDiscrepancy> discrepancies;
  bool passed{false};
};

/// Checks that census points of phi^k sit on the zero wall with theta equal to
/// the action, and, when requested, that Newton on q -> p(Gamma(phi^k, q))
/// started from the same seeds finds no zero away from the census. Only zeros
/// inside the seed z window are compared; the census does not search beyond it.
ZeroWallReport zero_wall_cross_check(const ContactMap& m, int k, const CensusReport& census,
                                     const CensusConfig& cfg, const ZeroWallOptions& opts = {});

}  // namespace contactlab

#endif  // CONTACTLAB_LEGENDRIAN_GRAPH_HPP
