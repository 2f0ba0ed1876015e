#include "contactlab/legendrian_graph.hpp"

#include "parallel.hpp"

#include <cmath>
#include <map>
#include <optional>

namespace contactlab {

JetGraphPoint gamma(const Point& q, const MapEvaluation& e) {
  const int n = q.n();
  const double eg = std::exp(e.g);
  const Point& f = e.image;
  JetGraphPoint out;
  out.base.resize(2 * n + 1);
  out.base << q.x, f.y, q.z;
  out.p.resize(2 * n + 1);
  out.p << f.y - eg * q.y, q.x - f.x, eg - 1.0;
  out.theta = q.x.dot(f.y) - f.x.dot(f.y) + f.z - q.z;
  return out;
}

JetGraphPoint gamma(const ContactMap& m, const Point& q) { return gamma(q, evaluate(m, q, false)); }

Eigen::MatrixXd gamma_jacobian(const Point& q, const MapEvaluation& e) {
  const int n = q.n();
  const int d = 2 * n + 1;
  const double eg = std::exp(e.g);
  const Point& f = e.image;
  const Mat& J = e.jacobian;
  const auto J1 = J.topRows(n);
  const auto J2 = J.middleRows(n, n);
  const auto J3 = J.row(2 * n);

  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(2 * d + 1, d);
  D.block(0, 0, n, n).setIdentity();
  D.block(n, 0, n, d) = J2;
  D(2 * n, 2 * n) = 1.0;

  D.block(d, 0, n, d) = J2 - eg * q.y * e.grad_g.transpose();
  D.block(d, n, n, n).diagonal().array() -= eg;
  D.block(d + n, 0, n, d) = -J1;
  D.block(d + n, 0, n, n).diagonal().array() += 1.0;
  D.row(2 * d - 1) = eg * e.grad_g.transpose();

  auto theta = D.row(2 * d);
  theta = q.x.transpose() * J2 - f.y.transpose() * J1 - f.x.transpose() * J2 + J3;
  theta.head(n) += f.y.transpose();
  theta(2 * n) -= 1.0;
  return D;
}

Eigen::MatrixXd gamma_jacobian(const ContactMap& m, const Point& q) {
  return gamma_jacobian(q, evaluate(m, q, true));
}

double legendrian_residual(const Point& q, const MapEvaluation& e) {
  const int d = q.dim();
  const JetGraphPoint G = gamma(q, e);
  const Eigen::MatrixXd D = gamma_jacobian(q, e);
  const Eigen::RowVectorXd form = D.row(2 * d) - G.p.transpose() * D.topRows(d);
  return form.cwiseAbs().maxCoeff();
}

double legendrian_residual(const ContactMap& m, const Point& q) {
  return legendrian_residual(q, evaluate(m, q, true));
}

namespace {

std::optional<Point> zero_of_p(const ContactMap& mk, const Point& seed, const NewtonOptions& newton) {
  const bool periodic = mk.periodic_z();
  const int d = seed.dim();
  ResidualFunction fn = [&](const Vec& v, Eigen::VectorXd& r, Eigen::MatrixXd* J) {
    const Point p = Point::from_coords(v, periodic);
    const MapEvaluation e = evaluate(mk, p, J != nullptr);
    r = gamma(p, e).p;
    if (J) *J = gamma_jacobian(p, e).middleRows(d, d);
  };
  const NewtonResult res = damped_newton(fn, seed.coords(), newton);
  if (!res.converged) return std::nullopt;
  return Point::from_coords(res.q, periodic);
}

}  // namespace

ZeroWallReport zero_wall_cross_check(const ContactMap& m, int k, const CensusReport& census,
                                     const CensusConfig& cfg, const ZeroWallOptions& opts) {
  if (k < 1 || k > census.K) throw std::invalid_argument("zero_wall_cross_check: census has no iterate k");
  ZeroWallReport report;
  report.k = k;
  report.tol = opts.tol;
  const ContactMap mk = iterate(m, k);
  const double bound = 10.0 * opts.tol;

  // Census side: representatives plus a stride sample of every (cluster, k) group.
  std::map<int, std::vector<const TranslatedPoint*>> groups;
  for (const auto& p : census.members)
    if (p.k == k) groups[p.orbit_id.value_or(-1)].push_back(&p);
  std::vector<const TranslatedPoint*> chosen;
  for (const auto& summary : census.per_k)
    if (summary.k == k)
      for (const auto& rep : summary.representatives) chosen.push_back(&rep);
  for (const auto& [id, list] : groups) {
    (void)id;
    const std::size_t stride = std::max<std::size_t>(1, list.size() / std::max<std::size_t>(1, opts.samples_per_cluster));
    for (std::size_t i = 0; i < list.size(); i += stride) chosen.push_back(list[i]);
  }
  report.points.resize(chosen.size());
  detail::parallel_for(chosen.size(), cfg.finder.threads, [&](std::size_t i) {
    const TranslatedPoint& tp = *chosen[i];
    const JetGraphPoint G = gamma(mk, tp.point);
    ZeroWallPoint& out = report.points[i];
    out.orbit_id = tp.orbit_id.value_or(-1);
    out.point = tp.point;
    out.p_norm = G.p.norm();
    out.theta = G.theta;
    out.action = tp.action;
    out.passed = out.p_norm <= bound && std::abs(out.theta - out.action) <= bound;
  });
  for (const auto& p : report.points) {
    report.max_p_norm = std::max(report.max_p_norm, p.p_norm);
    report.max_theta_error = std::max(report.max_theta_error, std::abs(p.theta - p.action));
    if (!p.passed)
      report.discrepancies.push_back({p.point, p.p_norm, p.theta, "census point off the zero wall or theta != action"});
  }

  if (opts.converse) {
    const bool replicate = m.commutes_with_reeb() && !m.is_identity();
    const SeedGrid grid = make_seed_grid(m, cfg.seeds, replicate, 0.5 * cfg.finder.geom_tol);
    std::vector<Point> seeds = grid.layer;
    const std::size_t grid_count = seeds.size();
    seeds.insert(seeds.end(), cfg.seeds.points.begin(), cfg.seeds.points.end());
    NewtonOptions newton = cfg.finder.newton;
    newton.tol = opts.tol;
    if (!std::isfinite(newton.max_step)) {
      const auto [hx, hy] = m.support_half_widths();
      const double w = std::min(hx, hy);
      newton.max_step = w > 0 ? 0.25 * w : 0.25;
    }
    std::vector<std::optional<Point>> zeros(seeds.size());
    detail::parallel_for(seeds.size(), cfg.finder.threads,
                         [&](std::size_t i) { zeros[i] = zero_of_p(mk, seeds[i], newton); });

    // Joint clustering: a cluster made only of p-zeros is a discrepancy.
    constexpr int kConverseTag = 0;
    std::vector<TranslatedPoint> joint;
    for (const auto& p : census.members)
      if (p.k == k) joint.push_back(p);
    for (std::size_t i = 0; i < zeros.size(); ++i) {
      if (!zeros[i]) continue;
      const double theta = gamma(mk, *zeros[i]).theta;
      if (!m.in_support(*zeros[i]) || std::abs(theta) <= cfg.finder.trivial_action_tol) continue;
      const double zz = zeros[i]->z;
      if (!m.periodic_z() &&
          (zz < cfg.seeds.z_min - cfg.finder.geom_tol || zz > cfg.seeds.z_max + cfg.finder.geom_tol)) {
        ++report.converse_outside_window;
        continue;
      }
      TranslatedPoint z;
      z.point = *zeros[i];
      z.k = kConverseTag;
      z.action = theta;
      const bool replicated = replicate && i < grid_count;
      if (!replicated) {
        joint.push_back(z);
        ++report.converse_zeros;
        continue;
      }
      for (double dz : grid.z_offsets) {
        TranslatedPoint copy = z;
        copy.point = reeb_translate(z.point, dz);
        joint.push_back(copy);
        ++report.converse_zeros;
      }
    }
    if (!joint.empty()) {
      const DedupeResult dd = dedupe(joint, cfg.finder.geom_tol);
      for (const auto& c : dd.clusters) {
        if (c.ks.back() != kConverseTag) continue;  // contains census points of phi^k
        const TranslatedPoint& rep = joint[c.representative];
        const JetGraphPoint G = gamma(mk, rep.point);
        report.discrepancies.push_back({rep.point, G.p.norm(), G.theta, "zero of p(Gamma) not found by the census"});
      }
    }
  }
  report.passed = report.discrepancies.empty();
  return report;
}

}  // namespace contactlab
