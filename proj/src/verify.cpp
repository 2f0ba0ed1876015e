#include "contactlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <random>

namespace contactlab {

namespace {

using std::numbers::pi;

struct FamilyCase {
  std::string label;
  std::string name;
  NamedParams params;
  int n{1};
};

const std::vector<FamilyCase>& catalog_cases() {
  static const std::vector<FamilyCase> cases = {
      {"radial_twist", "radial_twist", {}, 1},
      {"radial_twist(n=2)", "radial_twist", {}, 2},
      {"z_perturbed_twist", "z_perturbed_twist", {}, 1},
      {"anisotropic_twist", "anisotropic_twist", {}, 1},
      {"hamiltonian_lift", "hamiltonian_lift", {}, 1},
  };
  return cases;
}

class Checks {
 public:
  explicit Checks(std::string suite) : suite_(std::move(suite)) {}
  void upper(const std::string& name, double observed, double bound) {
    out_.push_back({suite_, name, observed, bound, false, observed <= bound});
  }
  void lower(const std::string& name, double observed, double bound) {
    out_.push_back({suite_, name, observed, bound, true, observed > bound});
  }
  std::vector<CheckResult> take() { return std::move(out_); }

 private:
  std::string suite_;
  std::vector<CheckResult> out_;
};

// Uniform samples from the planar support box (slightly enlarged) times z in [0, 1).
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  Point point(const ContactMap& m, double enlarge = 1.1) {
    auto [hx, hy] = m.support_half_widths();
    if (hx == 0.0) hx = hy = 1.0;
    Vec x(m.n()), y(m.n());
    for (int i = 0; i < m.n(); ++i) x(i) = uniform(-enlarge * hx, enlarge * hx);
    for (int i = 0; i < m.n(); ++i) y(i) = uniform(-enlarge * hy, enlarge * hy);
    return Point(x, y, uniform(0.0, 1.0), m.periodic_z());
  }
  Point interior_point(const ContactMap& m) {
    for (;;) {
      Point q = point(m, 1.0);
      if (m.in_support(q)) return q;
    }
  }
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }

 private:
  std::mt19937_64 rng_;
};

double rel(double err, double scale) { return err / std::max(1.0, scale); }

// Central-difference Jacobian of the image and gradient of g.
void finite_difference(const ContactMap& m, const Point& q, double h, Mat& J, Vec& grad_g) {
  const int d = q.dim();
  J.resize(d, d);
  grad_g.resize(d);
  for (int c = 0; c < d; ++c) {
    Vec qp = q.coords(), qm = q.coords();
    qp(c) += h;
    qm(c) -= h;
    const MapEvaluation ep = evaluate(m, Point::from_coords(qp, q.periodic_z), false);
    const MapEvaluation em = evaluate(m, Point::from_coords(qm, q.periodic_z), false);
    J.col(c) = (ep.image.coords() - em.image.coords()) / (2 * h);
    grad_g(c) = (ep.g - em.g) / (2 * h);
  }
}

double integrator_tolerance(const ContactMap& m, const Point& q) {
  double est = 0.0;
  for (const auto& atom : m.word())
    est = std::max(est, flow_error_estimate(*atom.hamiltonian, q, atom.t0, atom.t1, m.settings()));
  return std::max(est, 1e-13);
}

std::vector<CheckResult> core_suite(const VerifyOptions& opts) {
  Checks checks("core");
  Sampler rng(opts.seed);
  for (const auto& fc : catalog_cases()) {
    const HamiltonianSpec H = make_hamiltonian(fc.name, fc.params, fc.n);
    const ContactMap m = make_family(fc.name, fc.params, fc.n);
    double alpha = 0.0;
    for (int i = 0; i < opts.samples; ++i) {
      const Point q = rng.point(m);
      const double t = rng.uniform(0.0, 1.0);
      const Vec X = contact_vector_field(H, q, t);
      const double value = H.value(q.coords(), t);
      alpha = std::max(alpha, std::abs(contact_form(q.coords(), X, q.n()) - value) / (1.0 + std::abs(value)));
    }
    checks.upper(fc.label + ": alpha(X_H) = H", alpha, 1e-12);

    double conformal = 0.0, group = 0.0, jac = 0.0, grad = 0.0, min_det = std::numeric_limits<double>::infinity();
    const int heavy = std::max(1, opts.samples / 20);
    for (int i = 0; i < opts.samples; ++i) {
      const Point q = rng.interior_point(m);
      const MapEvaluation e = evaluate(m, q, i < heavy);
      Mat Jfd;
      Vec gfd;
      finite_difference(m, q, 1e-5, Jfd, gfd);
      double worst = 0.0, scale = 0.0;
      for (int c = 0; c < q.dim(); ++c) {
        const double lhs = contact_form(e.image.coords(), Jfd.col(c), q.n());
        const double rhs = std::exp(e.g) * contact_form(q.coords(), Vec::Unit(q.dim(), c), q.n());
        worst = std::max(worst, std::abs(lhs - rhs));
        scale = std::max(scale, std::abs(rhs));
      }
      conformal = std::max(conformal, rel(worst, scale));
      if (i >= heavy) continue;

      jac = std::max(jac, rel((e.jacobian - Jfd).cwiseAbs().maxCoeff(), e.jacobian.cwiseAbs().maxCoeff()));
      grad = std::max(grad, rel((e.grad_g - gfd).cwiseAbs().maxCoeff(), e.grad_g.cwiseAbs().maxCoeff()));
      min_det = std::min(min_det, e.jacobian.determinant());

      const auto full = flow(H, q, 0.0, 1.0, m.settings());
      const auto first = flow(H, q, 0.0, 0.4, m.settings());
      const auto second = flow(H, first.point, 0.4, 1.0, m.settings());
      const double err = std::max({(second.point.coords() - full.point.coords()).cwiseAbs().maxCoeff(),
                                   std::abs(second.g + first.g - full.g),
                                   (second.jacobian * first.jacobian - full.jacobian).cwiseAbs().maxCoeff()});
      group = std::max(group, err / (10.0 * integrator_tolerance(m, q)));
    }
    checks.upper(fc.label + ": phi^*alpha = e^g alpha (finite differences)", conformal, 1e-6);
    checks.upper(fc.label + ": group law / (10 x integrator tolerance)", group, 1.0);
    checks.upper(fc.label + ": Dphi vs finite differences", jac, 1e-5);
    checks.upper(fc.label + ": grad g vs finite differences", grad, 1e-5);
    checks.lower(fc.label + ": min det Dphi", min_det, 0.0);
  }

  // exponent 0: H is the constant amplitude on the ball, so X_H is the Reeb field there.
  const HamiltonianSpec plateau = make_hamiltonian("radial_twist", {{"exponent", 0}, {"radius", 2}}, 1);
  double reeb = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Point q = make_point(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(0, 1));
    Vec expected = Vec::Zero(3);
    expected(2) = 1.0;
    reeb = std::max(reeb, (contact_vector_field(plateau, q, 0.0) - expected).cwiseAbs().maxCoeff());
  }
  checks.upper("H = 1 generates the Reeb field", reeb, 0.0);
  return checks.take();
}

std::vector<CheckResult> maps_suite(const VerifyOptions& opts) {
  Checks checks("maps");
  Sampler rng(opts.seed + 1);
  for (const auto& fc : catalog_cases()) {
    if (fc.n != 1) continue;
    const ContactMap m = make_family(fc.name, fc.params, fc.n);
    double cocycle = 0.0;
    for (int i = 0; i < 6; ++i) {
      const Point q = rng.interior_point(m);
      Point p = q;
      double sum = 0.0;
      for (int k = 1; k <= 5; ++k) {
        sum += evaluate(m, p, false).g;
        p = evaluate(m, p, false).image;
        cocycle = std::max(cocycle, std::abs(evaluate(iterate(m, k), q, false).g - sum));
      }
    }
    checks.upper(fc.label + ": cocycle g_k = sum g(phi^j), k <= 5", cocycle, 1e-8);

    double outside = 0.0;
    for (int i = 0; i < 50; ++i) {
      Point q = rng.point(m, 1.5);
      if (m.in_support(q)) continue;
      const MapEvaluation e = evaluate(m, q, true);
      outside = std::max({outside, (e.image.coords() - q.coords()).cwiseAbs().maxCoeff(), std::abs(e.g),
                          e.grad_g.cwiseAbs().maxCoeff(),
                          (e.jacobian - Mat::Identity(q.dim(), q.dim())).cwiseAbs().maxCoeff()});
    }
    checks.upper(fc.label + ": identity outside the support (exact)", outside, 0.0);

    double round_trip = 0.0;
    const ContactMap inv = inverse(m);
    for (int i = 0; i < 20; ++i) {
      const Point q = rng.interior_point(m);
      const Point back = evaluate(inv, evaluate(m, q, false).image, false).image;
      round_trip = std::max(round_trip, (back.coords() - q.coords()).cwiseAbs().maxCoeff() /
                                            (10.0 * integrator_tolerance(m, q)));
    }
    checks.upper(fc.label + ": inverse round trip / (10 x integrator tolerance)", round_trip, 1.0);

    if (m.commutes_with_reeb()) {
      double g = 0.0;
      for (int i = 0; i < 50; ++i) g = std::max(g, std::abs(evaluate(m, rng.interior_point(m), false).g));
      checks.upper(fc.label + ": z-independent H gives g = 0", g, 1e-12);
    }
  }

  const ContactMap zp = make_family("z_perturbed_twist", NamedParams{});
  const ContactMap zp_inv = inverse(zp);
  double anti = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Point q = rng.interior_point(zp);
    const MapEvaluation e = evaluate(zp, q, false);
    anti = std::max(anti, std::abs(evaluate(zp_inv, e.image, false).g + e.g));
  }
  checks.upper("z_perturbed_twist: g_inv(phi(q)) + g(q)", anti, 1e-6);

  const ContactMap radial = make_family("radial_twist", NamedParams{});
  const ContactMap flat = make_family("z_perturbed_twist", NamedParams{{"epsilon", 0.0}});
  double eps0 = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Point q = rng.point(radial);
    const MapEvaluation a = evaluate(radial, q, false), b = evaluate(flat, q, false);
    eps0 = std::max({eps0, (a.image.coords() - b.image.coords()).cwiseAbs().maxCoeff(), std::abs(a.g - b.g)});
  }
  checks.upper("z_perturbed_twist(epsilon=0) = radial_twist", eps0, 1e-12);

  const ContactMap both = compose(zp, radial);
  double composition = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Point q = rng.interior_point(radial);
    const MapEvaluation e = evaluate(both, q, true);
    const MapEvaluation e1 = evaluate(radial, q, true);
    const MapEvaluation e2 = evaluate(zp, e1.image, true);
    const Mat J = e2.jacobian * e1.jacobian;
    composition = std::max({composition, rel((e.image.coords() - e2.image.coords()).cwiseAbs().maxCoeff(), e.image.coords().cwiseAbs().maxCoeff()),
                            rel(std::abs(e.g - (e2.g + e1.g)), std::abs(e.g)),
                            rel((e.jacobian - J).cwiseAbs().maxCoeff(), J.cwiseAbs().maxCoeff())});
  }
  checks.upper("compose(m2, m1) = m2 after m1 (relative)", composition, 1e-9);

  // dF = phi^*lambda - lambda for the prequantization lift, F = phi_3 - z.
  const ContactMap lift = make_family("hamiltonian_lift", NamedParams{});
  double dF = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Point q = rng.interior_point(lift);
    const MapEvaluation e = evaluate(lift, q, true);
    const double h = 1e-5;
    for (int c = 0; c < 2; ++c) {
      Vec qp = q.coords(), qm = q.coords();
      qp(c) += h;
      qm(c) -= h;
      const Point a = Point::from_coords(qp), b = Point::from_coords(qm);
      const double fd = ((evaluate(lift, a, false).image.z - a.z) - (evaluate(lift, b, false).image.z - b.z)) / (2 * h);
      const double form = e.image.y(0) * e.jacobian(0, c) - (c == 0 ? q.y(0) : 0.0);
      dF = std::max(dF, std::abs(fd - form));
    }
  }
  checks.upper("hamiltonian_lift: dF = phi^*lambda - lambda", dF, 1e-5);
  return checks.take();
}

struct OracleOrbit {
  int k;
  double s;
  double action;
};

// h(s) = pi (1 - s)^2: k-fold circles at 1 - s = m / (2k), action k (h - s h'), axis k pi.
std::vector<OracleOrbit> quadratic_oracle(int k) {
  std::vector<OracleOrbit> out{{k, 0.0, k * pi}};
  for (int j = 1; j < 2 * k; ++j) {
    const double s = 1.0 - static_cast<double>(j) / (2 * k);
    out.push_back({k, s, k * (pi * (1 - s) * (1 - s) + 2 * pi * s * (1 - s))});
  }
  return out;
}

std::vector<CheckResult> translated_suite(const VerifyOptions&) {
  Checks checks("translated");
  const ContactMap m = make_family("radial_twist", NamedParams{{"amplitude", pi}, {"exponent", 2}});
  CensusConfig cfg;
  cfg.seeds.grid = 24;
  const double tol = cfg.finder.newton.tol;
  const CensusReport report = iterated_census(m, 2, cfg);

  double action_err = 0.0, missing = 0.0, extra = 0.0;
  for (const auto& s : report.per_k) {
    const auto oracle = quadratic_oracle(s.k);
    std::vector<bool> hit(oracle.size(), false);
    for (const auto& rep : s.representatives) {
      const double radius_sq = rep.point.x.squaredNorm() + rep.point.y.squaredNorm();
      bool matched = false;
      for (std::size_t i = 0; i < oracle.size(); ++i)
        if (std::abs(radius_sq - oracle[i].s) < 1e-3) {
          matched = hit[i] = true;
          action_err = std::max(action_err, std::abs(rep.action - oracle[i].action));
        }
      if (!matched) extra += 1;
    }
    for (bool h : hit) missing += h ? 0 : 1;
  }
  checks.upper("radial oracle (grid 24, K=2): missing orbits", missing, 0);
  checks.upper("radial oracle (grid 24, K=2): extra orbits", extra, 0);
  checks.upper("radial oracle (grid 24, K=2): action error", action_err, 1e-6);

  double stored = 0.0;
  try {
    stored = reverify(m, report, tol);
  } catch (const PreconditionError&) {
    stored = std::numeric_limits<double>::infinity();
  }
  checks.upper("re-verification: stored vs recomputed action", stored, 1e-12);

  double closure = 0.0, cocycle = 0.0;
  for (const auto& l : shared_cluster_lemma_checks(m, report, tol)) {
    closure = std::max(closure, l.residual_derived);
    cocycle = std::max(cocycle, l.cocycle_error);
  }
  for (const auto& l : engineered_lemma_cases(4, tol)) {
    closure = std::max(closure, l.residual_derived);
    cocycle = std::max(cocycle, l.cocycle_error);
  }
  checks.upper("iteration lemma: derived residual", closure, 10 * tol);
  checks.upper("iteration lemma: cocycle", cocycle, 1e-8);

  const ContactMap lift = make_family("hamiltonian_lift", NamedParams{});
  CensusConfig lift_cfg;
  lift_cfg.seeds.grid = 12;
  const CensusReport lifted = iterated_census(lift, 1, lift_cfg);
  double primitive = lifted.per_k.front().representatives.empty() ? std::numeric_limits<double>::infinity() : 0.0;
  for (const auto& rep : lifted.per_k.front().representatives)
    primitive = std::max(primitive, std::abs(rep.action - lift_primitive(lift, rep.point)));
  checks.upper("hamiltonian_lift: action = F at fixed points", primitive, 1e-6);
  return checks.take();
}

std::vector<CheckResult> graph_suite(const VerifyOptions& opts) {
  Checks checks("graph");
  Sampler rng(opts.seed + 2);
  for (const auto& fc : catalog_cases()) {
    if (fc.n != 1) continue;
    const ContactMap m = make_family(fc.name, fc.params, fc.n);
    const auto [hx, hy] = m.support_half_widths();
    for (int k = 1; k <= 4; ++k) {
      const ContactMap mk = iterate(m, k);
      double worst = 0.0;
      for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
          for (int l = 0; l < 5; ++l)
            worst = std::max(worst, legendrian_residual(mk, make_point(hx * (-0.8 + 0.4 * i), hy * (-0.8 + 0.4 * j),
                                                                       0.1 + 0.2 * l)));
      checks.upper(fc.label + " k=" + std::to_string(k) + ": Legendrian residual (5^3 grid)", worst, 1e-6);
    }
  }

  const ContactMap zp = make_family("z_perturbed_twist", NamedParams{});
  double fd = 0.0, corrupted = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Point q = rng.interior_point(zp);
    const Eigen::MatrixXd D = gamma_jacobian(zp, q);
    for (int c = 0; c < 3; ++c) {
      Vec qp = q.coords(), qm = q.coords();
      qp(c) += 1e-5;
      qm(c) -= 1e-5;
      const JetGraphPoint a = gamma(zp, Point::from_coords(qp)), b = gamma(zp, Point::from_coords(qm));
      Eigen::VectorXd diff(7);
      diff << a.base - b.base, a.p - b.p, a.theta - b.theta;
      diff /= 2e-5;
      fd = std::max(fd, rel((diff - D.col(c)).cwiseAbs().maxCoeff(), D.col(c).cwiseAbs().maxCoeff()));
    }
    MapEvaluation e = evaluate(zp, q, true);
    e.g = 0.0;
    e.grad_g.setZero();
    corrupted = std::max(corrupted, legendrian_residual(q, e));
  }
  checks.upper("z_perturbed_twist: gamma_jacobian vs finite differences", fd, 1e-5);
  checks.lower("negative control (g replaced by 0): Legendrian residual", corrupted, 1e-3);

  const ContactMap id = make_family("radial_twist", NamedParams{{"amplitude", 0.0}});
  double zero_section = 0.0;
  for (int i = 0; i < 20; ++i) {
    const JetGraphPoint G = gamma(id, rng.point(zp));
    zero_section = std::max({zero_section, G.p.cwiseAbs().maxCoeff(), std::abs(G.theta)});
  }
  checks.upper("identity: Gamma is the zero section (exact)", zero_section, 0.0);

  const ContactMap radial = make_family("radial_twist", NamedParams{{"amplitude", pi}, {"exponent", 2}});
  CensusConfig cfg;
  cfg.seeds.grid = 16;
  const CensusReport census = iterated_census(radial, 1, cfg);
  const ZeroWallReport zw = zero_wall_cross_check(radial, 1, census, cfg);
  checks.upper("radial k=1 zero wall: max |p|", zw.max_p_norm, 10 * cfg.finder.newton.tol);
  checks.upper("radial k=1 zero wall: max |theta - action|", zw.max_theta_error, 10 * cfg.finder.newton.tol);
  checks.upper("radial k=1 zero wall: discrepancies", static_cast<double>(zw.discrepancies.size()), 0.0);
  return checks.take();
}

}  // namespace

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names = {"core", "maps", "translated", "graph"};
  return names;
}

std::vector<CheckResult> run_verify(const std::string& suite, const VerifyOptions& opts) {
  if (suite == "all") {
    std::vector<CheckResult> all;
    for (const auto& name : verify_suites()) {
      auto part = run_verify(name, opts);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  if (suite == "core") return core_suite(opts);
  if (suite == "maps") return maps_suite(opts);
  if (suite == "translated") return translated_suite(opts);
  if (suite == "graph") return graph_suite(opts);
  throw std::invalid_argument("unknown suite '" + suite + "' (expected core, maps, translated, graph or all)");
}

void print_checks(std::ostream& os, const std::vector<CheckResult>& checks) {
  std::size_t width = 0;
  for (const auto& c : checks) width = std::max(width, c.suite.size() + c.name.size() + 3);
  for (const auto& c : checks) {
    const std::string label = "[" + c.suite + "] " + c.name;
    os << std::left << std::setw(static_cast<int>(width)) << label << "  " << std::scientific << std::setprecision(3)
       << c.observed << (c.lower_bound ? " >  " : " <= ") << c.bound << "  " << (c.passed ? "PASS" : "FAIL") << '\n';
  }
  os.unsetf(std::ios::floatfield);
}

std::vector<LemmaReport> engineered_lemma_cases(int count, double tol) {
  const double epsilons[] = {0.3, 0.5, 0.2, 0.6};
  const std::pair<int, int> pairs[] = {{1, 2}, {1, 3}, {2, 3}, {2, 4}, {3, 4}};
  std::vector<LemmaReport> out;
  for (int c = 0; c < count; ++c) {
    const double eps = epsilons[(c / 5) % 4];
    const auto [k1, k2] = pairs[c % 5];
    const int d = k2 - k1;
    // Axis speed h0 (1 + eps sin 2 pi z) has period 1 / (h0 sqrt(1 - eps^2)) in z.
    const double h0 = 1.0 / (d * std::sqrt(1.0 - eps * eps));
    const ContactMap m = make_family("z_perturbed_twist", NamedParams{{"amplitude", h0}, {"epsilon", eps}});
    const ContactMap m1 = iterate(m, k1);
    auto g1 = [&](double z) { return evaluate(m1, make_point(0, 0, z), false).g; };

    // First sign change of g_k1 along the axis, then bisection.
    const int scan = 64;
    double lo = 0.0, flo = g1(lo), hi = lo, fhi = flo;
    for (int i = 1; i <= scan; ++i) {
      hi = static_cast<double>(i) / scan;
      fhi = g1(hi);
      if (flo == 0.0 || flo * fhi <= 0.0) break;
      lo = hi;
      flo = fhi;
    }
    if (flo * fhi > 0.0) throw std::runtime_error("engineered_lemma_cases: no root of g_k1 on the axis");
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double fm = g1(mid);
      if (flo * fm <= 0.0) {
        hi = mid;
      } else {
        lo = mid;
        flo = fm;
      }
    }
    const double z0 = std::abs(g1(lo)) < std::abs(g1(hi)) ? lo : hi;
    out.push_back(check_iteration_lemma(m, make_point(0, 0, z0), k1, k2, tol));
  }
  return out;
}

double lift_primitive(const ContactMap& m, const Point& q, int panels) {
  // The integrand is smooth inside each support and vanishes outside, so the
  // line is cut where it crosses a support boundary and each piece gets its own panels.
  std::vector<double> cuts;
  for (const auto& atom : m.word()) {
    const Support& s = atom.hamiltonian->support();
    if (s.empty) continue;
    Vec c = q.coords();
    c(0) = 0.0;
    const double rest = 1.0 - s.quadratic(c, q.n());
    if (rest <= 0.0) continue;
    const double xb = std::sqrt(rest / s.a);
    for (double x : {-xb, xb})
      if (x < q.x(0)) cuts.push_back(x);
  }
  if (cuts.empty()) return 0.0;
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(q.x(0));

  // 5-point Gauss-Legendre on each panel
  static const double nodes[] = {0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640,
                                 0.9061798459386640};
  static const double weights[] = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                                   0.2369268850569279, 0.2369268850569279};
  double total = 0.0;
  for (std::size_t piece = 0; piece + 1 < cuts.size(); ++piece) {
    const double width = (cuts[piece + 1] - cuts[piece]) / panels;
    if (width <= 0.0) continue;
    for (int p = 0; p < panels; ++p) {
      const double mid = cuts[piece] + (p + 0.5) * width;
      for (int i = 0; i < 5; ++i) {
        Point s = q;
        s.x(0) = mid + 0.5 * width * nodes[i];
        const MapEvaluation e = evaluate(m, s, true);
        // (phi^*lambda - lambda)(e_x1) = phi_2 . d phi_1 / d x_1 - y_1
        double integrand = -s.y(0);
        for (int j = 0; j < q.n(); ++j) integrand += e.image.y(j) * e.jacobian(j, 0);
        total += 0.5 * width * weights[i] * integrand;
      }
    }
  }
  return total;
}

}  // namespace contactlab
