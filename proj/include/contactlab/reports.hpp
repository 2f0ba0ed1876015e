#ifndef CONTACTLAB_REPORTS_HPP
#define CONTACTLAB_REPORTS_HPP

#include "contactlab/config.hpp"
#include "contactlab/legendrian_graph.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace contactlab {

/// Everything a census run produces, before serialization.
struct CensusRun {
  ExperimentConfig config;
  CensusReport report;
  std::vector<ZeroWallReport> graph;  // one per k
  std::vector<LemmaReport> lemmas;
  std::vector<std::string> invariant_failures;
  double reverify_action_error{0.0};
  bool invariants_passed() const { return invariant_failures.empty(); }
};

nlohmann::json to_json(const Point& p);
nlohmann::json to_json(const TranslatedPoint& p);
nlohmann::json to_json(const LemmaReport& r);
nlohmann::json to_json(const ZeroWallReport& r);

/// Report with top-level keys config_echo, per_k, distinct_clusters, periodic_points, flags, errors.
nlohmann::json census_json(const CensusRun& run);
/// Action table: one row per (orbit cluster, k) representative.
std::string census_csv(const CensusReport& report);

/// Text written to disk: two-space indented JSON with a trailing newline.
std::string dump(const nlohmann::json& j);

}  // namespace contactlab

#endif  // CONTACTLAB_REPORTS_HPP
