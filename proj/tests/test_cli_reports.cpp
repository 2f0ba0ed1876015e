#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "contactlab/experiments.hpp"
#include "oracles.hpp"

#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

using namespace contactlab;
using nlohmann::json;
using std::numbers::pi;

namespace {

ConfigError parse_error(const std::string& text) {
  try {
    parse_config(text, "test.json");
  } catch (const ConfigError& e) {
    return e;
  }
  FAIL("expected a ConfigError for " << text);
  return ConfigError("", "", "");
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("contactlab_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("config parsing: errors carry path, field and reason") {
  struct Case {
    std::string text, field;
  };
  const std::vector<Case> cases = {
      {"{", "<document>"},
      {"[1, 2]", "<document>"},
      {R"({"K": 2})", "family"},
      {R"({"family": 3})", "family"},
      {R"({"family": {"params": {}}})", "family.name"},
      {R"({"family": {"name": "radial_twist", "params": {"amplitude": "big"}}})", "family.params.amplitude"},
      {R"({"family": "radial_twist", "K": 0})", "K"},
      {R"({"family": "radial_twist", "K": 1.5})", "K"},
      {R"({"family": "radial_twist", "grid": -3})", "grid"},
      {R"({"family": "radial_twist", "newton_tol": 0})", "newton_tol"},
      {R"({"family": "radial_twist", "geom_tol": "wide"})", "geom_tol"},
      {R"({"family": "radial_twist", "manifold": "torus"})", "manifold"},
      {R"({"family": "radial_twist", "n": 9})", "n"},
      {R"({"family": "radial_twist", "seed": -1})", "seed"},
      {R"({"family": "radial_twist", "graph_converse": 1})", "graph_converse"},
      {R"({"family": "radial_twist", "colour": "red"})", "colour"},
      {R"({"family": "radial_twist", "output": {"report": 5}})", "output.report"},
      {R"({"family": "radial_twist", "output": {"pdf": "x"}})", "output.pdf"},
      {R"({"family": "spiral"})", "family"},
      {R"({"family": {"name": "z_perturbed_twist", "params": {"epsilon": 1.2}}})", "family"},
      {R"({"family": {"name": "radial_twist", "params": {"width": 1}}})", "family"},
  };
  for (const auto& c : cases) {
    CAPTURE(c.text);
    const ConfigError e = parse_error(c.text);
    CHECK(e.path() == "test.json");
    CHECK(e.field() == c.field);
    CHECK_FALSE(e.reason().empty());
    CHECK(std::string(e.what()).find("test.json: " + c.field) == 0);
  }
}

TEST_CASE("config parsing: missing file") {
  try {
    load_config("/nonexistent/contactlab.json");
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.path() == "/nonexistent/contactlab.json");
  }
}

TEST_CASE("config parsing: defaults and round trip") {
  const ExperimentConfig a = parse_config(R"({"family": "radial_twist"})");
  CHECK(a.family == "radial_twist");
  CHECK(a.params.empty());
  CHECK(a.manifold == "r2n1");
  CHECK(a.K == 1);
  CHECK(a.newton_tol == 1e-9);
  CHECK_FALSE(a.periodic_z());

  const ExperimentConfig b = parse_config(R"({
    "family": {"name": "z_perturbed_twist", "params": {"amplitude": 0.7, "epsilon": 0.25}},
    "manifold": "r2n-s1", "n": 1, "K": 3, "grid": 12, "newton_tol": 1e-10, "geom_tol": 0.04,
    "steps_per_unit_time": 1500, "seed": 42, "threads": 2, "graph_converse": false,
    "output": {"report": "out/r.json", "actions_csv": "out/a.csv", "graph_report": "out/g.json"}
  })");
  CHECK(b.periodic_z());
  CHECK(b.params.at("epsilon") == 0.25);
  CHECK(b.seed == 42);
  CHECK(b.csv_path == "out/a.csv");
  for (const auto& cfg : {a, b}) {
    const ExperimentConfig again = parse_config(serialize_config(cfg));
    CHECK(again == cfg);
    CHECK(serialize_config(again) == serialize_config(cfg));
  }
  const CensusConfig cc = census_config(b);
  CHECK(cc.seeds.grid == 12);
  CHECK(cc.finder.newton.tol == 1e-10);
  CHECK(cc.finder.geom_tol == 0.04);
  CHECK(build_map(b).settings().steps_per_unit_time == 1500);
  CHECK(build_map(b).periodic_z());
}

TEST_CASE("identity-like config: empty spectrum and a clean report") {
  const auto dir = scratch_dir("identity");
  ExperimentConfig cfg = parse_config(R"({"family": {"name": "radial_twist", "params": {"amplitude": 0}}, "K": 2, "grid": 6})");
  cfg.report_path = (dir / "report.json").string();
  cfg.csv_path = (dir / "actions.csv").string();
  const CensusRun run = run_census(cfg);
  CHECK(run.invariants_passed());
  write_census_outputs(run);

  const json j = json::parse(read_file(cfg.report_path));
  for (const char* key : {"config_echo", "per_k", "distinct_clusters", "periodic_points", "flags", "errors"})
    CHECK(j.contains(key));
  CHECK(j.size() == 6);
  CHECK(j["flags"]["identity_like"] == true);
  CHECK(j["flags"]["none_found"] == true);
  CHECK(j["distinct_clusters"]["count"] == 0);
  CHECK(j["errors"].empty());
  CHECK(j["config_echo"] == json::parse(serialize_config(cfg)));
  CHECK(read_file(cfg.csv_path) == "k,action,orbit_id,nondegenerate,residual_norm,continuum_flag\n");
  std::filesystem::remove_all(dir);
}

TEST_CASE("quadratic twist config: action table against the rotation oracle") {
  ExperimentConfig cfg = parse_config(R"({
    "family": {"name": "radial_twist", "params": {"amplitude": 3.141592653589793, "exponent": 2}},
    "K": 4, "grid": 14, "geom_tol": 0.015
  })");
  const CensusRun run = run_census(cfg);
  CHECK(run.invariants_passed());
  for (const auto& f : run.invariant_failures) MESSAGE(f);
  const auto rows = csv_rows(census_csv(run.report));
  REQUIRE(rows.size() > 1);
  CHECK(rows[0] == std::vector<std::string>{"k", "action", "orbit_id", "nondegenerate", "residual_norm",
                                            "continuum_flag"});
  std::set<int> axis_ks;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i].size() == 6);
    const int k = std::stoi(rows[i][0]);
    const double action = std::stod(rows[i][1]);
    CHECK(std::stod(rows[i][4]) <= cfg.newton_tol);
    bool known = false;
    for (const auto& o : oracle::quadratic_orbits(k)) known = known || std::abs(o.action - action) <= 1e-6;
    CHECK(known);
    if (std::abs(action - k * pi) <= 1e-6) axis_ks.insert(k);
  }
  CHECK(axis_ks == std::set<int>{1, 2, 3, 4});
  const json j = census_json(run);
  CHECK(j["flags"]["monotone_max_action"] == true);
  CHECK(j["periodic_points"].empty());
  CHECK(j["per_k"].size() == 4);
  for (const auto& entry : j["per_k"]) {
    CHECK(entry.contains("zero_wall"));
    CHECK(entry["zero_wall"]["passed"] == true);
  }
}

TEST_CASE("solid torus config with h(0) = 1 lists the axis as periodic for every k") {
  const ExperimentConfig cfg = parse_config(R"({
    "family": {"name": "radial_twist", "params": {"amplitude": 1, "exponent": 2}},
    "manifold": "r2n-s1", "K": 3, "grid": 10
  })");
  const CensusRun run = run_census(cfg);
  CHECK(run.invariants_passed());
  const json j = census_json(run);
  std::set<int> ks;
  for (const auto& p : j["periodic_points"]) {
    ks.insert(p["k"].get<int>());
    CHECK(std::abs(p["g"].get<double>()) <= 1e-12);
  }
  CHECK(ks == std::set<int>{1, 2, 3});
  CHECK(j["flags"]["integer_action_coincidence"] == true);
}

TEST_CASE("solver failures are recorded per k") {
  // h' overflows inside the support, so every seed's flow turns non-finite
  const ExperimentConfig cfg = parse_config(R"({
    "family": {"name": "radial_twist", "params": {"amplitude": 1e308}}, "K": 2, "grid": 4
  })");
  const CensusRun run = run_census(cfg);
  REQUIRE(run.report.per_k.size() == 2);
  for (const auto& s : run.report.per_k) {
    REQUIRE(s.error.has_value());
    CHECK(s.error->find("non-finite") != std::string::npos);
  }
  CHECK(run.report.errors.size() == 2);
  CHECK_FALSE(run.invariants_passed());
  const json j = census_json(run);
  CHECK(j["errors"].size() == 2);
  CHECK(j["per_k"][1]["error"].is_string());
}

TEST_CASE("reports are byte-identical across runs") {
  const auto dir = scratch_dir("determinism");
  ExperimentConfig cfg = parse_config(R"({
    "family": {"name": "z_perturbed_twist", "params": {"epsilon": 0.4}},
    "K": 2, "grid": 6, "threads": 3
  })");
  std::string reports[2], tables[2];
  for (int i = 0; i < 2; ++i) {
    cfg.report_path = (dir / ("r" + std::to_string(i) + ".json")).string();
    cfg.csv_path = (dir / ("a" + std::to_string(i) + ".csv")).string();
    const CensusRun run = run_census(cfg);
    write_census_outputs(run);
    reports[i] = read_file(cfg.report_path);
    tables[i] = read_file(cfg.csv_path);
  }
  // only the output paths differ in the config echo
  const auto strip = [](std::string s) {
    json j = json::parse(s);
    j["config_echo"].erase("output");
    return j.dump();
  };
  CHECK(strip(reports[0]) == strip(reports[1]));
  CHECK(tables[0] == tables[1]);
  std::filesystem::remove_all(dir);
}

TEST_CASE("graph-check writes its report") {
  const auto dir = scratch_dir("graph");
  ExperimentConfig cfg = parse_config(R"({
    "family": {"name": "radial_twist", "params": {"amplitude": 3.141592653589793, "exponent": 2}}, "grid": 10
  })");
  cfg.graph_path = (dir / "graph.json").string();
  const ZeroWallReport r = run_graph_check(cfg, 1);
  CHECK(r.passed);
  const json j = json::parse(read_file(cfg.graph_path));
  CHECK(j["k"] == 1);
  CHECK(j["passed"] == true);
  CHECK_THROWS_AS(run_graph_check(cfg, 0), std::invalid_argument);
  std::filesystem::remove_all(dir);
}

TEST_CASE("verify suites") {
  CHECK(verify_suites() == std::vector<std::string>{"core", "maps", "translated", "graph"});
  CHECK_THROWS_AS(run_verify("nonsense"), std::invalid_argument);
  VerifyOptions opts;
  opts.samples = 50;
  const auto checks = run_verify("maps", opts);
  CHECK_FALSE(checks.empty());
  for (const auto& c : checks) {
    CAPTURE(c.name);
    CHECK(c.passed);
  }
  std::ostringstream os;
  print_checks(os, checks);
  CHECK(os.str().find("PASS") != std::string::npos);
}

TEST_CASE("JSON helpers") {
  TranslatedPoint p;
  p.point = make_point(0.5, -0.25, 1.0);
  p.k = 2;
  p.action = 1.5;
  p.orbit_id = 3;
  const json j = to_json(p);
  CHECK(j["k"] == 2);
  CHECK(j["orbit_id"] == 3);
  CHECK(j["action"] == 1.5);
  CHECK(dump(json{{"a", 1}}) == "{\n  \"a\": 1\n}\n");
}
