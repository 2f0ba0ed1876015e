#include "contactlab/config.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace contactlab {

using nlohmann::json;

namespace {

class Reader {
 public:
  Reader(const json& root, std::string source) : root_(root), source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& field, const std::string& reason) const {
    throw ConfigError(source_, field, reason);
  }

  const json* find(const json& obj, const std::string& key) const {
    auto it = obj.find(key);
    return it == obj.end() || it->is_null() ? nullptr : &*it;
  }

  double number(const json& obj, const std::string& key, const std::string& field, double fallback) const {
    const json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_number()) fail(field, "expected a number");
    return v->get<double>();
  }

  long long integer(const json& obj, const std::string& key, const std::string& field, long long fallback) const {
    const json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_number_integer() && !v->is_number_unsigned()) fail(field, "expected an integer");
    return v->get<long long>();
  }

  std::string string(const json& obj, const std::string& key, const std::string& field,
                     const std::string& fallback) const {
    const json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_string()) fail(field, "expected a string");
    return v->get<std::string>();
  }

  bool boolean(const json& obj, const std::string& key, const std::string& field, bool fallback) const {
    const json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_boolean()) fail(field, "expected true or false");
    return v->get<bool>();
  }

  void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> keys) const {
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (auto it = obj.begin(); it != obj.end(); ++it)
      if (!allowed.count(it.key())) fail(where.empty() ? it.key() : where + "." + it.key(), "unknown field");
  }

  const json& root() const { return root_; }

 private:
  const json& root_;
  std::string source_;
};

}  // namespace

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& ex) {
    throw ConfigError(source, "<document>", std::string("invalid JSON: ") + ex.what());
  }
  Reader r(root, source);
  if (!root.is_object()) r.fail("<document>", "expected a JSON object");
  r.only_keys(root, "",
              {"family", "manifold", "n", "K", "grid", "newton_tol", "geom_tol", "steps_per_unit_time", "seed",
               "threads", "graph_converse", "output"});

  ExperimentConfig cfg;
  const json* family = r.find(root, "family");
  if (!family) r.fail("family", "missing");
  if (family->is_string()) {
    cfg.family = family->get<std::string>();
  } else if (family->is_object()) {
    r.only_keys(*family, "family", {"name", "params"});
    cfg.family = r.string(*family, "name", "family.name", "");
    if (const json* params = r.find(*family, "params")) {
      if (!params->is_object()) r.fail("family.params", "expected an object of name: number");
      for (auto it = params->begin(); it != params->end(); ++it) {
        if (!it->is_number()) r.fail("family.params." + it.key(), "expected a number");
        cfg.params[it.key()] = it->get<double>();
      }
    }
  } else {
    r.fail("family", "expected a name or an object {name, params}");
  }
  if (cfg.family.empty()) r.fail("family.name", "missing");

  cfg.manifold = r.string(root, "manifold", "manifold", cfg.manifold);
  cfg.n = static_cast<int>(r.integer(root, "n", "n", cfg.n));
  cfg.K = static_cast<int>(r.integer(root, "K", "K", cfg.K));
  cfg.grid = static_cast<int>(r.integer(root, "grid", "grid", cfg.grid));
  cfg.newton_tol = r.number(root, "newton_tol", "newton_tol", cfg.newton_tol);
  cfg.geom_tol = r.number(root, "geom_tol", "geom_tol", cfg.geom_tol);
  cfg.steps_per_unit_time =
      static_cast<int>(r.integer(root, "steps_per_unit_time", "steps_per_unit_time", cfg.steps_per_unit_time));
  const long long seed = r.integer(root, "seed", "seed", 0);
  if (seed < 0) r.fail("seed", "must be non-negative");
  cfg.seed = static_cast<std::uint64_t>(seed);
  cfg.threads = static_cast<int>(r.integer(root, "threads", "threads", cfg.threads));
  cfg.graph_converse = r.boolean(root, "graph_converse", "graph_converse", cfg.graph_converse);
  if (const json* out = r.find(root, "output")) {
    if (!out->is_object()) r.fail("output", "expected an object");
    r.only_keys(*out, "output", {"report", "actions_csv", "graph_report"});
    cfg.report_path = r.string(*out, "report", "output.report", "");
    cfg.csv_path = r.string(*out, "actions_csv", "output.actions_csv", "");
    cfg.graph_path = r.string(*out, "graph_report", "output.graph_report", "");
  }

  if (cfg.manifold != "r2n1" && cfg.manifold != "r2n-s1") r.fail("manifold", "expected \"r2n1\" or \"r2n-s1\"");
  if (cfg.n < 1 || cfg.n > kMaxHalfDim) r.fail("n", "must be between 1 and " + std::to_string(kMaxHalfDim));
  if (cfg.K < 1) r.fail("K", "must be at least 1");
  if (cfg.grid < 1) r.fail("grid", "must be at least 1");
  if (!(cfg.newton_tol > 0)) r.fail("newton_tol", "must be positive");
  if (!(cfg.geom_tol > 0)) r.fail("geom_tol", "must be positive");
  if (cfg.steps_per_unit_time < 1) r.fail("steps_per_unit_time", "must be positive");
  if (cfg.threads < 0) r.fail("threads", "must be non-negative");

  ContactMap m(cfg.n, false);
  try {
    m = build_map(cfg);
  } catch (const std::invalid_argument& ex) {
    r.fail("family", ex.what());
  }
  if (cfg.periodic_z() && !m.commutes_with_unit_shift())
    r.fail("manifold", "family " + cfg.family + " is not 1-periodic in z");
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "<document>", "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

std::string serialize_config(const ExperimentConfig& cfg) {
  json params = json::object();
  for (const auto& [k, v] : cfg.params) params[k] = v;
  json out = json::object();
  out["family"] = {{"name", cfg.family}, {"params", params}};
  out["manifold"] = cfg.manifold;
  out["n"] = cfg.n;
  out["K"] = cfg.K;
  out["grid"] = cfg.grid;
  out["newton_tol"] = cfg.newton_tol;
  out["geom_tol"] = cfg.geom_tol;
  out["steps_per_unit_time"] = cfg.steps_per_unit_time;
  out["seed"] = cfg.seed;
  out["threads"] = cfg.threads;
  out["graph_converse"] = cfg.graph_converse;
  out["output"] = {{"report", cfg.report_path}, {"actions_csv", cfg.csv_path}, {"graph_report", cfg.graph_path}};
  return out.dump(2);
}

ContactMap build_map(const ExperimentConfig& cfg) {
  IntegratorSettings settings;
  settings.steps_per_unit_time = cfg.steps_per_unit_time;
  return make_family(cfg.family, cfg.params, cfg.n, cfg.periodic_z(), settings);
}

CensusConfig census_config(const ExperimentConfig& cfg) {
  CensusConfig c;
  c.seeds.grid = cfg.grid;
  c.finder.newton.tol = cfg.newton_tol;
  c.finder.geom_tol = cfg.geom_tol;
  c.finder.threads = cfg.threads;
  return c;
}

}  // namespace contactlab
