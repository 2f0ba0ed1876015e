#ifndef CONTACTLAB_EXPERIMENTS_HPP
#define CONTACTLAB_EXPERIMENTS_HPP

#include "contactlab/reports.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace contactlab {

/// Census for k = 1..K with re-verification, iteration-lemma checks at shared
/// clusters and a zero-wall cross-check per k. Solver failures are recorded per
/// k in the report instead of aborting.
CensusRun run_census(const ExperimentConfig& cfg);

/// Writes the JSON report and the CSV action table to the configured paths
/// (missing directories are created; empty paths are skipped).
void write_census_outputs(const CensusRun& run);

/// Census up to k followed by the zero-wall cross-check of phi^k.
ZeroWallReport run_graph_check(const ExperimentConfig& cfg, int k);

// ---------------------------------------------------------------- verify

struct CheckResult {
  std::string suite;
  std::string name;
  double observed{0.0};
  double bound{0.0};
  bool lower_bound{false};  // pass when observed > bound (negative controls)
  bool passed{false};
};

struct VerifyOptions {
  std::uint64_t seed{0};
  int samples{1000};  // random samples per family for the convention checks
};

const std::vector<std::string>& verify_suites();  // core, maps, translated, graph

/// Runs one suite, or every suite for "all". Throws std::invalid_argument on an unknown name.
std::vector<CheckResult> run_verify(const std::string& suite, const VerifyOptions& opts = {});

void print_checks(std::ostream& os, const std::vector<CheckResult>& checks);

/// Axis points of z_perturbed_twist that are translated for both phi^k1 and
/// phi^k2: the amplitude is tuned so that phi^(k2-k1) moves the axis by a whole
/// period, and z is solved for g_k1 = 0. Returns one lemma report per case.
std::vector<LemmaReport> engineered_lemma_cases(int count, double tol);

/// F(q) for a z-independent map, integrated as the line integral of
/// phi^*lambda - lambda (lambda = y dx) along the x_1 direction from outside the support.
double lift_primitive(const ContactMap& m, const Point& q, int panels = 48);

}  // namespace contactlab

#endif  // CONTACTLAB_EXPERIMENTS_HPP
