#ifndef CONTACTLAB_TRANSLATED_POINTS_HPP
#define CONTACTLAB_TRANSLATED_POINTS_HPP

#include "contactlab/contact_map.hpp"
#include "contactlab/newton.hpp"

#include <optional>
#include <string>
#include <vector>

namespace contactlab {

/// A zero of the translated-point residual of phi^k.
struct TranslatedPoint {
  Point point;
  int k{1};
  double action{0.0};  // z(phi^k(q)) - z(q), real lift
  double residual_norm{0.0};
  double g{0.0};       // g_k(q)
  double min_singular_value{0.0};
  bool nondegenerate{false};
  bool trivial{false};  // outside the open support, or collapsed onto its boundary
  std::optional<int> orbit_id;
  bool continuum{false};
};

/// (phi_1 - x, phi_2 - y, g) for the map m.
Vec residual(const ContactMap& m, const Point& q);
/// Rows (Dphi - Id) on the (x, y) outputs, then grad g.
Mat residual_jacobian(const ContactMap& m, const Point& q);

/// Contact action z(phi^k(q)) - z(q). Throws PreconditionError (carrying the
/// residual norm) when q is not a translated point of phi^k within `tol`.
double action_of(const ContactMap& m, int k, const Point& q, double tol = 1e-8);

struct SeedStrategy {
  int grid{20};             // points per axis over the support box; 0 disables the grid
  double z_min{0.0};        // z window for the grid
  double z_max{1.0};
  std::vector<Point> points;  // explicit seeds
};

struct FinderOptions {
  NewtonOptions newton{};
  double geom_tol{0.05};     // single-linkage radius for deduplication
  double rank_tol{1e-6};     // nondegenerate iff sigma_min of the residual Jacobian exceeds this
  double trivial_action_tol{1e-7};
  int threads{0};            // 0: hardware concurrency
  bool bridge_continua{true};  // join arcs of one degenerate continuum by Newton-projected chords
};

struct Cluster {
  int id{0};
  std::vector<std::size_t> members;  // indices into the clustered list
  std::size_t representative{0};
  std::vector<int> ks;  // iterates present in the cluster, ascending
  double extent{0.0};
  bool continuum{false};
};

struct DedupeResult {
  std::vector<TranslatedPoint> representatives;  // one per cluster, in cluster id order
  std::vector<Cluster> clusters;
};

/// Single-linkage clustering under max(|dx|, |dy|, dist_z), dist_z taken modulo 1
/// on the circle. Points are sorted canonically first, and orbit ids are assigned
/// in that order, so the result does not depend on the input order.
/// A cluster with more than 10 members spread over more than geom_tol is a continuum.
DedupeResult dedupe(std::vector<TranslatedPoint>& points, double geom_tol);

/// Canonical ordering used before deduplication.
void sort_canonically(std::vector<TranslatedPoint>& points);

struct FinderResult {
  int k{1};
  std::vector<TranslatedPoint> members;          // converged, non-trivial, with orbit ids
  std::vector<TranslatedPoint> representatives;  // one per cluster
  std::vector<Cluster> clusters;
  std::size_t trivial_count{0};
  std::size_t seed_count{0};
  std::size_t converged_count{0};
  std::string diagnostic;
};

/// Grid seeds over the support box intersected with the open support. For maps
/// that commute with the Reeb flow only the first z layer is returned in `layer`
/// and the remaining z offsets in `z_offsets`.
struct SeedGrid {
  std::vector<Point> layer;
  std::vector<double> z_offsets;  // empty unless replicated
};
/// Replicated layers are spaced at most `max_layer_step` apart in z (the grid
/// spacing when zero), so that Reeb copies of one solution chain under dedupe.
SeedGrid make_seed_grid(const ContactMap& m, const SeedStrategy& seeds, bool replicate_reeb,
                        double max_layer_step = 0.0);

/// Damped Newton on the residual of phi^k from every seed; keeps converged points,
/// classifies trivial ones, computes actions and nondegeneracy, and deduplicates.
FinderResult find_translated_points(const ContactMap& m, int k, const SeedStrategy& seeds,
                                    const FinderOptions& opts = {});

/// Newton polish of q on the stacked residuals of phi^k1 and phi^k2.
NewtonResult refine_common_point(const ContactMap& m, const Point& q, int k1, int k2,
                                 const NewtonOptions& opts = {});

struct LemmaReport {
  int k1{0}, k2{0};
  double residual_k1{0}, residual_k2{0}, residual_derived{0};
  double g_k1{0}, g_k2{0}, g_derived{0};
  double cocycle_error{0};  // |g_k2(q) - g_{k2-k1}(phi^k1 q) - g_k1(q)|
  Point derived;            // phi^k1(q)
  bool passed{false};       // residual_derived <= 10 tol
};

/// If q is translated for phi^k1 and phi^k2 (k1 < k2), phi^k1(q) is translated for phi^(k2-k1).
/// Throws PreconditionError naming the failing residual otherwise.
LemmaReport check_iteration_lemma(const ContactMap& m, const Point& q, int k1, int k2, double tol);

// ---------------------------------------------------------------- census

struct CensusConfig {
  SeedStrategy seeds{};
  FinderOptions finder{};
  double integer_tol{1e-6};  // integer-action coincidence and periodic-point z equality
  bool seed_with_images{true};
};

struct ClusterSummary {
  int id{0};
  std::vector<int> ks;
  std::size_t member_count{0};
  bool continuum{false};
  Point representative;
  double mean_planar_radius_sq{0.0};  // mean |x|^2 + |y|^2 over members
};

struct IterateSummary {
  int k{1};
  std::vector<TranslatedPoint> representatives;  // one per (cluster, k), sorted by orbit id
  std::size_t member_count{0};
  std::size_t trivial_count{0};
  std::size_t seed_count{0};
  std::size_t converged_count{0};
  std::optional<double> max_action;
  std::size_t cumulative_distinct{0};  // clusters with a member of some iterate <= k
  std::string diagnostic;
  std::optional<std::string> error;
};

struct PeriodicPoint {
  int orbit_id{0};
  int k{1};
  Point point;
  double g{0.0};
  double action{0.0};
};

struct CoincidencePair {
  int orbit_id{0};
  int k1{0}, k2{0};
  double action1{0.0}, action2{0.0};
};

struct CensusFlags {
  bool identity_like{false};
  bool monotone_max_action{false};
  bool integer_action_coincidence{false};
  bool none_found{false};
};

struct CensusReport {
  int K{1};
  bool periodic_z{false};
  std::vector<IterateSummary> per_k;
  std::vector<ClusterSummary> clusters;
  std::vector<PeriodicPoint> periodic_points;
  std::vector<CoincidencePair> coincidences;
  CensusFlags flags;
  std::vector<std::string> errors;
  std::vector<TranslatedPoint> members;  // every non-trivial converged point, with orbit ids
  std::size_t distinct_count() const { return clusters.size(); }
  std::size_t total_count() const { return members.size(); }
};

/// Runs the finder for k = 1..K, deduplicates across k, and records periodic
/// points, the per-k maximum action sequence and integer-action coincidences.
CensusReport iterated_census(const ContactMap& m, int K, const CensusConfig& cfg);

/// Re-checks every listed representative: residual <= tol and the stored action.
/// Returns the largest action discrepancy; throws if a residual fails.
double reverify(const ContactMap& m, const CensusReport& report, double tol);

/// Iteration-lemma checks at every cluster shared by two iterates: the
/// representative of the smaller iterate is polished as a common point first.
std::vector<LemmaReport> shared_cluster_lemma_checks(const ContactMap& m, const CensusReport& report,
                                                     double tol);

}  // namespace contactlab

#endif  // CONTACTLAB_TRANSLATED_POINTS_HPP
