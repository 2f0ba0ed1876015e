#include "contactlab/translated_points.hpp"

#include "parallel.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace contactlab {

namespace {

void fill_residual(const Point& q, const MapEvaluation& e, Eigen::VectorXd& r) {
  const int n = q.n();
  r.resize(2 * n + 1);
  r.head(n) = e.image.x - q.x;
  r.segment(n, n) = e.image.y - q.y;
  r(2 * n) = e.g;
}

void fill_jacobian(const MapEvaluation& e, int n, Eigen::MatrixXd& J) {
  const int d = 2 * n + 1;
  J.resize(d, d);
  J.topRows(2 * n) = e.jacobian.topRows(2 * n);
  J.topLeftCorner(2 * n, 2 * n).diagonal().array() -= 1.0;
  J.row(2 * n) = e.grad_g.transpose();
}

double smallest_singular_value(const Eigen::MatrixXd& J) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

// Plain dot products of the affine planar coordinates; z handled separately.
double planar_radius_sq(const Point& q) { return q.x.squaredNorm() + q.y.squaredNorm(); }

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[b] = a;
  }
};

struct CellKey {
  std::array<long long, kMaxDim> c{};
  bool operator==(const CellKey& o) const { return c == o.c; }
};
struct CellHash {
  std::size_t operator()(const CellKey& k) const {
    std::size_t h = 1469598103934665603ull;
    for (long long v : k.c) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull;
    return h;
  }
};

double circular_extent(std::vector<double> zs) {
  for (double& z : zs) z -= std::floor(z);
  std::sort(zs.begin(), zs.end());
  double gap = 1.0 - zs.back() + zs.front();
  for (std::size_t i = 1; i < zs.size(); ++i) gap = std::max(gap, zs[i] - zs[i - 1]);
  return 1.0 - gap;
}

TranslatedPoint make_translated(const ContactMap& m, const ContactMap& mk, int k, const Point& q,
                                const FinderOptions& opts) {
  const MapEvaluation e = evaluate(mk, q, true);
  Eigen::VectorXd r;
  Eigen::MatrixXd J;
  fill_residual(q, e, r);
  fill_jacobian(e, q.n(), J);
  TranslatedPoint tp;
  tp.point = q;
  tp.k = k;
  tp.action = e.image.z - q.z;
  tp.residual_norm = r.norm();
  tp.g = e.g;
  tp.min_singular_value = smallest_singular_value(J);
  tp.nondegenerate = tp.min_singular_value > opts.rank_tol;
  tp.trivial = !m.in_support(q) || std::abs(tp.action) <= opts.trivial_action_tol;
  return tp;
}

NewtonOptions effective_newton(const ContactMap& m, NewtonOptions o) {
  if (!std::isfinite(o.max_step)) {
    const auto [hx, hy] = m.support_half_widths();
    const double w = std::min(hx, hy);
    o.max_step = w > 0 ? 0.25 * w : 0.25;
  }
  return o;
}

}  // namespace

Vec residual(const ContactMap& m, const Point& q) {
  const MapEvaluation e = evaluate(m, q, false);
  Eigen::VectorXd r;
  fill_residual(q, e, r);
  return r;
}

Mat residual_jacobian(const ContactMap& m, const Point& q) {
  const MapEvaluation e = evaluate(m, q, true);
  Eigen::MatrixXd J;
  fill_jacobian(e, q.n(), J);
  return J;
}

double action_of(const ContactMap& m, int k, const Point& q, double tol) {
  const MapEvaluation e = evaluate(iterate(m, k), q, false);
  Eigen::VectorXd r;
  fill_residual(q, e, r);
  if (r.norm() > tol) {
    std::ostringstream msg;
    msg << "action_of: q is not a translated point of phi^" << k << " (residual " << r.norm() << ")";
    throw PreconditionError(msg.str());
  }
  return e.image.z - q.z;
}

void sort_canonically(std::vector<TranslatedPoint>& points) {
  std::stable_sort(points.begin(), points.end(), [](const TranslatedPoint& a, const TranslatedPoint& b) {
    if (a.k != b.k) return a.k < b.k;
    const Vec ca = a.point.coords(), cb = b.point.coords();
    return std::lexicographical_compare(ca.data(), ca.data() + ca.size(), cb.data(), cb.data() + cb.size());
  });
}

DedupeResult dedupe(std::vector<TranslatedPoint>& points, double geom_tol) {
  if (!(geom_tol > 0)) throw std::invalid_argument("dedupe: geom_tol must be positive");
  sort_canonically(points);
  DedupeResult out;
  if (points.empty()) return out;

  const int d = points.front().point.dim();
  const bool periodic = points.front().point.periodic_z;
  const long long z_cells = std::max(1LL, static_cast<long long>(std::floor(1.0 / geom_tol)));

  auto key_of = [&](const Point& p) {
    CellKey key;
    const Vec c = p.coords();
    for (int i = 0; i < d - 1; ++i) key.c[i] = static_cast<long long>(std::floor(c(i) / geom_tol));
    if (periodic) {
      const double frac = c(d - 1) - std::floor(c(d - 1));
      key.c[d - 1] = std::min(z_cells - 1, static_cast<long long>(std::floor(frac * z_cells)));
    } else {
      key.c[d - 1] = static_cast<long long>(std::floor(c(d - 1) / geom_tol));
    }
    return key;
  };

  std::unordered_map<CellKey, std::vector<std::size_t>, CellHash> cells;
  UnionFind uf(points.size());
  int neighbours = 1;
  for (int i = 0; i < d; ++i) neighbours *= 3;

  for (std::size_t i = 0; i < points.size(); ++i) {
    const CellKey key = key_of(points[i].point);
    for (int code = 0; code < neighbours; ++code) {
      CellKey nb = key;
      int c = code;
      for (int axis = 0; axis < d; ++axis, c /= 3) {
        nb.c[axis] += (c % 3) - 1;
        if (periodic && axis == d - 1) nb.c[axis] = ((nb.c[axis] % z_cells) + z_cells) % z_cells;
      }
      auto it = cells.find(nb);
      if (it == cells.end()) continue;
      for (std::size_t j : it->second)
        if (geometric_distance(points[i].point, points[j].point) <= geom_tol) uf.unite(i, j);
    }
    cells[key].push_back(i);
  }

  std::map<std::size_t, std::vector<std::size_t>> groups;  // keyed by smallest member index
  for (std::size_t i = 0; i < points.size(); ++i) groups[uf.find(i)].push_back(i);

  int id = 0;
  for (auto& [root, members] : groups) {
    (void)root;
    Cluster c;
    c.id = id++;
    c.members = members;
    c.representative = members.front();
    std::vector<double> zs;
    Vec lo = points[members.front()].point.coords(), hi = lo;
    for (std::size_t i : members) {
      const auto& p = points[i];
      if (p.residual_norm < points[c.representative].residual_norm) c.representative = i;
      c.ks.push_back(p.k);
      const Vec v = p.point.coords();
      lo = lo.cwiseMin(v);
      hi = hi.cwiseMax(v);
      zs.push_back(v(d - 1));
    }
    std::sort(c.ks.begin(), c.ks.end());
    c.ks.erase(std::unique(c.ks.begin(), c.ks.end()), c.ks.end());
    c.extent = (hi - lo).head(d - 1).maxCoeff();
    c.extent = std::max(c.extent, periodic ? circular_extent(zs) : hi(d - 1) - lo(d - 1));
    c.continuum = members.size() > 10 && c.extent > geom_tol;
    for (std::size_t i : members) {
      points[i].orbit_id = c.id;
      points[i].continuum = c.continuum;
    }
    out.representatives.push_back(points[c.representative]);
    out.clusters.push_back(std::move(c));
  }
  return out;
}

SeedGrid make_seed_grid(const ContactMap& m, const SeedStrategy& seeds, bool replicate_reeb,
                        double max_layer_step) {
  SeedGrid grid;
  if (seeds.grid <= 0) return grid;
  const int n = m.n();
  const int N = seeds.grid;
  auto [hx, hy] = m.support_half_widths();
  const bool empty = hx == 0.0 || hy == 0.0;
  if (empty) hx = hy = 1.0;
  const double dz = (seeds.z_max - seeds.z_min) / N;
  auto coord = [N](double half, int i) { return -half + (i + 0.5) * (2.0 * half / N); };

  std::vector<double> zs;
  for (int j = 0; j < N; ++j) zs.push_back(seeds.z_min + (j + 0.5) * dz);
  const std::size_t planar = static_cast<std::size_t>(std::pow(N, 2 * n));
  const int layers = replicate_reeb ? 1 : N;
  for (int layer = 0; layer < layers; ++layer) {
    for (std::size_t idx = 0; idx < planar; ++idx) {
      Vec x(n), y(n);
      std::size_t rest = idx;
      for (int i = 0; i < n; ++i, rest /= N) x(i) = coord(hx, static_cast<int>(rest % N));
      for (int i = 0; i < n; ++i, rest /= N) y(i) = coord(hy, static_cast<int>(rest % N));
      Point p(x, y, zs[layer], m.periodic_z());
      if (!empty && !m.in_support(p)) continue;
      grid.layer.push_back(p);
    }
  }
  if (replicate_reeb) {
    int copies = N;
    if (max_layer_step > 0) copies = std::max(N, static_cast<int>(std::ceil((seeds.z_max - seeds.z_min) / max_layer_step)));
    const double step = (seeds.z_max - seeds.z_min) / copies;
    for (int j = 0; j < copies; ++j) grid.z_offsets.push_back(j * step);
  }
  return grid;
}

namespace {

std::optional<TranslatedPoint> solve_seed(const ContactMap& m, const ContactMap& mk, int k, const Point& seed,
                                          const NewtonOptions& newton, const FinderOptions& opts) {
  const bool periodic = m.periodic_z();
  ResidualFunction fn = [&](const Vec& q, Eigen::VectorXd& r, Eigen::MatrixXd* J) {
    const Point p = Point::from_coords(q, periodic);
    const MapEvaluation e = evaluate(mk, p, J != nullptr);
    fill_residual(p, e, r);
    if (J) fill_jacobian(e, p.n(), *J);
  };
  const NewtonResult res = damped_newton(fn, seed.coords(), newton);
  if (!res.converged) return std::nullopt;
  return make_translated(m, mk, k, Point::from_coords(res.q, periodic), opts);
}

bool same_action(double a, double b) { return std::abs(a - b) <= 1e-6 * (1.0 + std::abs(a)); }

// Grid seeds land on a circle of solutions only where the grid meets its basin,
// so one continuum can come out as several arcs. Two degenerate clusters with
// equal action are joined by a continuation walk: steps of geom_tol / 2 toward
// the far cluster, each corrected by Newton, must stay on solutions of that
// action and move less than geom_tol.
std::vector<TranslatedPoint> bridge_continua(const ContactMap& m, const ContactMap& mk, int k,
                                             const std::vector<TranslatedPoint>& members,
                                             const std::vector<Cluster>& clusters, const NewtonOptions& newton,
                                             const FinderOptions& opts) {
  constexpr std::size_t kSamples = 256;
  constexpr int kMaxChain = 200;
  constexpr double kKernelRtol = 1e-6;
  std::vector<int> candidates;
  for (const auto& c : clusters)
    if (!members[c.representative].nondegenerate) candidates.push_back(c.id);

  // one sample per occupied geom_tol cell, so arc ends survive the thinning
  std::vector<std::vector<std::size_t>> samples(clusters.size());
  for (int id : candidates) {
    std::set<std::vector<long long>> seen;
    std::vector<std::size_t> cover;
    for (std::size_t i : clusters[id].members) {
      const Vec c = members[i].point.coords();
      std::vector<long long> key(c.size());
      for (Eigen::Index j = 0; j < c.size(); ++j) key[j] = static_cast<long long>(std::floor(c(j) / opts.geom_tol));
      if (seen.insert(std::move(key)).second) cover.push_back(i);
    }
    const std::size_t stride = std::max<std::size_t>(1, cover.size() / kSamples);
    for (std::size_t i = 0; i < cover.size(); i += stride) samples[id].push_back(cover[i]);
  }

  struct Pair {
    double distance;
    int a, b;
    std::size_t pa, pb;
  };
  std::vector<Pair> pairs;
  for (std::size_t a = 0; a < candidates.size(); ++a) {
    for (std::size_t b = a + 1; b < candidates.size(); ++b) {
      const int ia = candidates[a], ib = candidates[b];
      if (!same_action(members[clusters[ia].representative].action, members[clusters[ib].representative].action))
        continue;
      Pair best{std::numeric_limits<double>::infinity(), ia, ib, 0, 0};
      for (std::size_t i : samples[ia])
        for (std::size_t j : samples[ib]) {
          const double d = geometric_distance(members[i].point, members[j].point);
          if (d < best.distance) best.distance = d, best.pa = i, best.pb = j;
        }
      pairs.push_back(best);
    }
  }
  // nearest first, so neighbouring arcs are joined before long chords are tried
  std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) { return x.distance < y.distance; });

  UnionFind joined(clusters.size());
  std::vector<TranslatedPoint> bridges;
  for (const Pair& pair : pairs) {
    const int ia = pair.a, ib = pair.b;
    if (joined.find(ia) == joined.find(ib)) continue;
    const double action = members[clusters[ia].representative].action;
    const std::size_t pa = pair.pa, pb = pair.pb;
    if (pair.distance > kMaxChain * 0.5 * opts.geom_tol) continue;

    const Point target = members[pb].point;
    std::vector<TranslatedPoint> chain;
    Point previous = members[pa].point;
    bool ok = true;
    for (int s = 0; s < 2 * kMaxChain && geometric_distance(previous, target) > opts.geom_tol; ++s) {
      const Vec here = previous.coords();
      Vec delta = target.coords() - here;
      if (m.periodic_z()) delta(delta.size() - 1) -= std::round(delta(delta.size() - 1));
      // predictor along the solution set: delta projected onto ker of the residual Jacobian
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(residual_jacobian(mk, previous), Eigen::ComputeFullV);
      const auto& sv = svd.singularValues();
      Vec tangent = Vec::Zero(delta.size());
      for (Eigen::Index i = 0; i < svd.matrixV().cols(); ++i) {
        const double sigma = i < sv.size() ? sv(i) : 0.0;
        if (sigma <= kKernelRtol * sv(0)) tangent += svd.matrixV().col(i).dot(delta) * svd.matrixV().col(i);
      }
      const double len = tangent.norm();
      if (!(len > 0.0)) {
        ok = false;
        break;
      }
      const Vec seed = here + std::min(1.0, 0.5 * opts.geom_tol / len) * tangent;
      auto tp = solve_seed(m, mk, k, Point::from_coords(seed, m.periodic_z()), newton, opts);
      ok = tp && !tp->trivial && same_action(action, tp->action) &&
           geometric_distance(previous, tp->point) <= opts.geom_tol;
      if (!ok) break;
      previous = tp->point;
      chain.push_back(std::move(*tp));
    }
    if (!ok || geometric_distance(previous, target) > opts.geom_tol) continue;
    joined.unite(ia, ib);
    bridges.insert(bridges.end(), chain.begin(), chain.end());
  }
  return bridges;
}

}  // namespace

FinderResult find_translated_points(const ContactMap& m, int k, const SeedStrategy& seeds,
                                    const FinderOptions& opts) {
  if (k < 1) throw std::invalid_argument("find_translated_points: k must be positive");
  if (!(opts.newton.tol > 0)) throw std::invalid_argument("find_translated_points: tol must be positive");
  const ContactMap mk = iterate(m, k);
  const bool replicate = m.commutes_with_reeb() && !m.is_identity();
  const SeedGrid grid = make_seed_grid(m, seeds, replicate, 0.5 * opts.geom_tol);
  std::vector<Point> all_seeds = grid.layer;
  const std::size_t grid_count = all_seeds.size();
  all_seeds.insert(all_seeds.end(), seeds.points.begin(), seeds.points.end());
  const NewtonOptions newton = effective_newton(m, opts.newton);

  std::vector<std::optional<TranslatedPoint>> solved(all_seeds.size());
  detail::parallel_for(all_seeds.size(), opts.threads,
               [&](std::size_t i) { solved[i] = solve_seed(m, mk, k, all_seeds[i], newton, opts); });

  FinderResult out;
  out.k = k;
  out.seed_count = (replicate ? grid_count * grid.z_offsets.size() : grid_count) + seeds.points.size();
  for (std::size_t i = 0; i < solved.size(); ++i) {
    if (!solved[i]) continue;
    const bool replicated = replicate && i < grid_count;
    const std::size_t copies = replicated ? grid.z_offsets.size() : 1;
    out.converged_count += copies;
    if (solved[i]->trivial) {
      out.trivial_count += copies;
      continue;
    }
    if (!replicated) {
      out.members.push_back(*solved[i]);
      continue;
    }
    for (double dz : grid.z_offsets) {
      TranslatedPoint copy = *solved[i];
      copy.point = reeb_translate(copy.point, dz);
      out.members.push_back(copy);
    }
  }
  DedupeResult dd = dedupe(out.members, opts.geom_tol);
  if (opts.bridge_continua && dd.clusters.size() > 1) {
    const auto bridges = bridge_continua(m, mk, k, out.members, dd.clusters, newton, opts);
    if (!bridges.empty()) {
      out.members.insert(out.members.end(), bridges.begin(), bridges.end());
      dd = dedupe(out.members, opts.geom_tol);
    }
  }
  out.representatives = std::move(dd.representatives);
  out.clusters = std::move(dd.clusters);

  std::ostringstream diag;
  diag << out.seed_count << " seeds, " << out.converged_count << " converged, " << out.trivial_count
       << " trivial, " << out.clusters.size() << " clusters";
  if (out.members.empty()) diag << "; none found";
  out.diagnostic = diag.str();
  return out;
}

NewtonResult refine_common_point(const ContactMap& m, const Point& q, int k1, int k2, const NewtonOptions& opts) {
  const ContactMap m1 = iterate(m, k1);
  const ContactMap m2 = iterate(m, k2);
  const bool periodic = m.periodic_z();
  ResidualFunction fn = [&](const Vec& v, Eigen::VectorXd& r, Eigen::MatrixXd* J) {
    const Point p = Point::from_coords(v, periodic);
    const MapEvaluation e1 = evaluate(m1, p, J != nullptr);
    const MapEvaluation e2 = evaluate(m2, p, J != nullptr);
    Eigen::VectorXd r1, r2;
    fill_residual(p, e1, r1);
    fill_residual(p, e2, r2);
    r.resize(r1.size() + r2.size());
    r << r1, r2;
    if (J) {
      Eigen::MatrixXd J1, J2;
      fill_jacobian(e1, p.n(), J1);
      fill_jacobian(e2, p.n(), J2);
      J->resize(J1.rows() + J2.rows(), J1.cols());
      *J << J1, J2;
    }
  };
  return damped_newton(fn, q.coords(), effective_newton(m, opts));
}

LemmaReport check_iteration_lemma(const ContactMap& m, const Point& q, int k1, int k2, double tol) {
  if (!(k1 >= 1 && k1 < k2)) throw std::invalid_argument("check_iteration_lemma: need 1 <= k1 < k2");
  LemmaReport rep;
  rep.k1 = k1;
  rep.k2 = k2;
  Eigen::VectorXd r;
  const MapEvaluation e1 = evaluate(iterate(m, k1), q, false);
  fill_residual(q, e1, r);
  rep.residual_k1 = r.norm();
  rep.g_k1 = e1.g;
  const MapEvaluation e2 = evaluate(iterate(m, k2), q, false);
  fill_residual(q, e2, r);
  rep.residual_k2 = r.norm();
  rep.g_k2 = e2.g;
  auto fail = [&](int k, double res) {
    std::ostringstream msg;
    msg << "check_iteration_lemma: q is not a translated point of phi^" << k << " (residual " << res
        << " > tol " << tol << ")";
    throw PreconditionError(msg.str());
  };
  if (rep.residual_k1 > tol) fail(k1, rep.residual_k1);
  if (rep.residual_k2 > tol) fail(k2, rep.residual_k2);

  rep.derived = e1.image;
  const MapEvaluation e3 = evaluate(iterate(m, k2 - k1), rep.derived, false);
  fill_residual(rep.derived, e3, r);
  rep.residual_derived = r.norm();
  rep.g_derived = e3.g;
  rep.cocycle_error = std::abs(rep.g_k2 - rep.g_derived - rep.g_k1);
  rep.passed = rep.residual_derived <= 10.0 * tol;
  return rep;
}

// ---------------------------------------------------------------- census

namespace {

// Representative of (cluster, k): smallest residual among members of that iterate.
std::map<std::pair<int, int>, const TranslatedPoint*> representatives_by_cluster_and_k(
    const std::vector<TranslatedPoint>& members) {
  std::map<std::pair<int, int>, const TranslatedPoint*> reps;
  for (const auto& p : members) {
    const auto key = std::make_pair(p.orbit_id.value_or(-1), p.k);
    auto it = reps.find(key);
    if (it == reps.end() || p.residual_norm < it->second->residual_norm) reps[key] = &p;
  }
  return reps;
}

double distance_to_integer(double v) { return std::abs(v - std::round(v)); }

}  // namespace

CensusReport iterated_census(const ContactMap& m, int K, const CensusConfig& cfg) {
  if (K < 1) throw std::invalid_argument("iterated_census: K must be positive");
  CensusReport report;
  report.K = K;
  report.periodic_z = m.periodic_z();
  const double tol = cfg.finder.newton.tol;

  std::vector<TranslatedPoint> previous_reps;
  for (int k = 1; k <= K; ++k) {
    IterateSummary summary;
    summary.k = k;
    try {
      SeedStrategy seeds = cfg.seeds;
      if (cfg.seed_with_images && k > 1) {
        const bool wrap = m.commutes_with_unit_shift();
        for (const auto& rep : previous_reps) {
          Point image = rep.point;
          for (int j = 0; j < k; ++j) {
            if (j > 0) image = evaluate(m, image, false).image;
            Point seed = image;
            if (wrap) seed.z = seeds.z_min + (seed.z - seeds.z_min) - std::floor(seed.z - seeds.z_min);
            seeds.points.push_back(seed);
          }
        }
      }
      FinderResult found = find_translated_points(m, k, seeds, cfg.finder);
      summary.member_count = found.members.size();
      summary.trivial_count = found.trivial_count;
      summary.seed_count = found.seed_count;
      summary.converged_count = found.converged_count;
      summary.diagnostic = found.diagnostic;
      previous_reps.insert(previous_reps.end(), found.representatives.begin(), found.representatives.end());
      report.members.insert(report.members.end(), found.members.begin(), found.members.end());
    } catch (const std::exception& ex) {
      summary.error = ex.what();
      report.errors.push_back("k=" + std::to_string(k) + ": " + ex.what());
    }
    report.per_k.push_back(std::move(summary));
  }

  DedupeResult dd = dedupe(report.members, cfg.finder.geom_tol);
  const auto reps = representatives_by_cluster_and_k(report.members);

  for (const auto& c : dd.clusters) {
    ClusterSummary s;
    s.id = c.id;
    s.ks = c.ks;
    s.member_count = c.members.size();
    s.continuum = c.continuum;
    s.representative = report.members[c.representative].point;
    double acc = 0.0;
    for (std::size_t i : c.members) acc += planar_radius_sq(report.members[i].point);
    s.mean_planar_radius_sq = acc / static_cast<double>(c.members.size());
    report.clusters.push_back(std::move(s));
  }

  for (auto& summary : report.per_k) {
    for (const auto& [key, p] : reps)
      if (key.second == summary.k) summary.representatives.push_back(*p);
    for (const auto& p : report.members)
      if (p.k == summary.k && (!summary.max_action || p.action > *summary.max_action)) summary.max_action = p.action;
    for (const auto& c : report.clusters)
      if (!c.ks.empty() && c.ks.front() <= summary.k) ++summary.cumulative_distinct;
  }

  // Periodic points: phi^k(q) geometrically equal to q, with g_k(q) = 0.
  for (const auto& [key, p] : reps) {
    const double shift = report.periodic_z ? distance_to_integer(p->action) : std::abs(p->action);
    if (std::abs(p->g) <= tol && shift <= cfg.integer_tol)
      report.periodic_points.push_back({key.first, key.second, p->point, p->g, p->action});
  }

  // Integer-action coincidences between iterates sharing a point (circle case only).
  if (report.periodic_z) {
    for (const auto& c : report.clusters) {
      for (std::size_t a = 0; a < c.ks.size(); ++a) {
        const TranslatedPoint* base = reps.at({c.id, c.ks[a]});
        for (std::size_t b = a + 1; b < c.ks.size(); ++b) {
          const int k1 = c.ks[a], k2 = c.ks[b];
          Point q = base->point;
          double a1 = base->action;
          Eigen::VectorXd r2 = residual(iterate(m, k2), q);
          if (r2.norm() > 10.0 * tol) {
            const NewtonResult polished = refine_common_point(m, q, k1, k2, cfg.finder.newton);
            if (!polished.converged) continue;
            q = Point::from_coords(polished.q, true);
            a1 = evaluate(iterate(m, k1), q, false).image.z - q.z;
          }
          const double a2 = evaluate(iterate(m, k2), q, false).image.z - q.z;
          if (distance_to_integer(a2 - a1) <= cfg.integer_tol) report.coincidences.push_back({c.id, k1, k2, a1, a2});
        }
      }
    }
  }

  report.flags.identity_like = m.is_identity();
  report.flags.none_found = report.members.empty();
  report.flags.integer_action_coincidence = !report.coincidences.empty();
  bool monotone = true;
  for (std::size_t i = 0; i < report.per_k.size(); ++i) {
    const auto& cur = report.per_k[i].max_action;
    if (!cur || (i > 0 && !(*cur > *report.per_k[i - 1].max_action))) {
      monotone = false;
      break;
    }
  }
  report.flags.monotone_max_action = monotone;
  return report;
}

double reverify(const ContactMap& m, const CensusReport& report, double tol) {
  double worst = 0.0;
  for (const auto& summary : report.per_k) {
    const ContactMap mk = iterate(m, summary.k);
    for (const auto& p : summary.representatives) {
      const MapEvaluation e = evaluate(mk, p.point, false);
      Eigen::VectorXd r;
      fill_residual(p.point, e, r);
      if (r.norm() > tol) {
        std::ostringstream msg;
        msg << "reverify: representative of orbit " << p.orbit_id.value_or(-1) << " at k=" << summary.k
            << " has residual " << r.norm();
        throw PreconditionError(msg.str());
      }
      worst = std::max(worst, std::abs(p.action - (e.image.z - p.point.z)));
    }
  }
  return worst;
}

std::vector<LemmaReport> shared_cluster_lemma_checks(const ContactMap& m, const CensusReport& report, double tol) {
  std::vector<LemmaReport> out;
  const auto reps = representatives_by_cluster_and_k(report.members);
  for (const auto& c : report.clusters) {
    for (std::size_t a = 0; a < c.ks.size(); ++a) {
      for (std::size_t b = a + 1; b < c.ks.size(); ++b) {
        const int k1 = c.ks[a], k2 = c.ks[b];
        NewtonOptions opts;
        opts.tol = tol;
        const NewtonResult polished = refine_common_point(m, reps.at({c.id, k1})->point, k1, k2, opts);
        if (!polished.converged) {
          LemmaReport failed;
          failed.k1 = k1;
          failed.k2 = k2;
          failed.residual_k1 = failed.residual_k2 = polished.residual_norm;
          failed.residual_derived = std::numeric_limits<double>::infinity();
          out.push_back(failed);
          continue;
        }
        out.push_back(check_iteration_lemma(m, Point::from_coords(polished.q, m.periodic_z()), k1, k2, tol));
      }
    }
  }
  return out;
}

}  // namespace contactlab
