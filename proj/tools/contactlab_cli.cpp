#include "contactlab/experiments.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace cl = contactlab;

namespace {

int census(const std::string& path) {
  const cl::ExperimentConfig cfg = cl::load_config(path);
  const cl::CensusRun run = cl::run_census(cfg);
  cl::write_census_outputs(run);
  if (cfg.report_path.empty()) std::cout << cl::dump(cl::census_json(run));
  for (const auto& s : run.report.per_k) std::cerr << "k=" << s.k << ": " << s.diagnostic << '\n';
  std::cerr << run.report.distinct_count() << " distinct orbit clusters, " << run.report.total_count()
            << " points\n";
  for (const auto& f : run.invariant_failures) std::cerr << "invariant failed: " << f << '\n';
  return run.invariants_passed() ? 0 : 1;
}

int verify(const std::string& suite, std::uint64_t seed) {
  cl::VerifyOptions opts;
  opts.seed = seed;
  const auto checks = cl::run_verify(suite, opts);
  cl::print_checks(std::cout, checks);
  const bool ok = std::all_of(checks.begin(), checks.end(), [](const cl::CheckResult& c) { return c.passed; });
  std::cout << (ok ? "all checks passed" : "some checks FAILED") << '\n';
  return ok ? 0 : 1;
}

int graph_check(const std::string& path, int k) {
  const cl::ExperimentConfig cfg = cl::load_config(path);
  const cl::ZeroWallReport report = cl::run_graph_check(cfg, k);
  if (cfg.graph_path.empty()) std::cout << cl::dump(cl::to_json(report));
  std::cerr << "k=" << k << ": " << report.points.size() << " census points checked, max |p| " << report.max_p_norm
            << ", max |theta - action| " << report.max_theta_error << ", " << report.discrepancies.size()
            << " discrepancies\n";
  return report.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Translated points of contactomorphisms of R^{2n+1} and R^{2n} x S^1"};
  app.require_subcommand(1);

  std::string config_path;
  auto* census_cmd = app.add_subcommand("census", "Iterated translated-point census with cross-checks");
  census_cmd->add_option("--config", config_path, "JSON experiment configuration")->required();

  std::string suite;
  std::uint64_t seed = 0;
  auto* verify_cmd = app.add_subcommand("verify", "Run invariant suites");
  verify_cmd->add_option("--suite", suite, "core, maps, translated, graph or all")->required();
  verify_cmd->add_option("--seed", seed, "sampling seed");

  int k = 1;
  auto* graph_cmd = app.add_subcommand("graph-check", "Zero-wall cross-check of phi^k");
  graph_cmd->add_option("--config", config_path, "JSON experiment configuration")->required();
  graph_cmd->add_option("--k", k, "iterate")->required()->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);
  try {
    if (census_cmd->parsed()) return census(config_path);
    if (verify_cmd->parsed()) return verify(suite, seed);
    if (graph_cmd->parsed()) return graph_check(config_path, k);
  } catch (const cl::ConfigError& ex) {
    std::cerr << "config error: " << ex.what() << '\n';
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 2;
  }
  return 2;
}
