#include "contactlab/experiments.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace contactlab {

namespace {

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) return;
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace

CensusRun run_census(const ExperimentConfig& cfg) {
  CensusRun run;
  run.config = cfg;
  const ContactMap m = build_map(cfg);
  const CensusConfig cc = census_config(cfg);
  const double tol = cfg.newton_tol;
  run.report = iterated_census(m, cfg.K, cc);
  auto fail = [&](const std::string& what) { run.invariant_failures.push_back(what); };

  for (const auto& e : run.report.errors) fail("solver error: " + e);
  if (run.report.distinct_count() > run.report.total_count()) fail("distinct count exceeds total count");

  try {
    run.reverify_action_error = reverify(m, run.report, tol);
    if (run.reverify_action_error > 1e-12) fail("stored action differs from recomputed action");
  } catch (const std::exception& ex) {
    fail(ex.what());
  }

  try {
    run.lemmas = shared_cluster_lemma_checks(m, run.report, tol);
    for (const auto& l : run.lemmas) {
      std::ostringstream where;
      where << "iteration lemma (" << l.k1 << ", " << l.k2 << ")";
      if (!l.passed) fail(where.str() + ": derived residual " + std::to_string(l.residual_derived));
      if (l.passed && l.cocycle_error > 1e-8) fail(where.str() + ": cocycle error " + std::to_string(l.cocycle_error));
    }
  } catch (const std::exception& ex) {
    fail(std::string("iteration lemma: ") + ex.what());
  }

  ZeroWallOptions zw;
  zw.tol = tol;
  zw.converse = cfg.graph_converse;
  for (int k = 1; k <= cfg.K; ++k) {
    try {
      run.graph.push_back(zero_wall_cross_check(m, k, run.report, cc, zw));
      if (!run.graph.back().passed)
        fail("zero-wall cross-check k=" + std::to_string(k) + ": " +
             std::to_string(run.graph.back().discrepancies.size()) + " discrepancies");
    } catch (const std::exception& ex) {
      fail("zero-wall cross-check k=" + std::to_string(k) + ": " + ex.what());
    }
  }
  return run;
}

void write_census_outputs(const CensusRun& run) {
  write_text(run.config.report_path, dump(census_json(run)));
  write_text(run.config.csv_path, census_csv(run.report));
}

ZeroWallReport run_graph_check(const ExperimentConfig& cfg, int k) {
  if (k < 1) throw std::invalid_argument("graph-check: k must be positive");
  const ContactMap m = build_map(cfg);
  const CensusConfig cc = census_config(cfg);
  const CensusReport census = iterated_census(m, k, cc);
  ZeroWallOptions zw;
  zw.tol = cfg.newton_tol;
  zw.converse = cfg.graph_converse;
  ZeroWallReport report = zero_wall_cross_check(m, k, census, cc, zw);
  write_text(cfg.graph_path, dump(to_json(report)));
  return report;
}

}  // namespace contactlab
