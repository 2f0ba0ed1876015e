#include "contactlab/reports.hpp"

#include <algorithm>
#include <cstdio>

namespace contactlab {

using nlohmann::json;

namespace {

json vec_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

json to_json(const Point& p) { return {{"x", vec_json(p.x)}, {"y", vec_json(p.y)}, {"z", p.z}}; }

json to_json(const TranslatedPoint& p) {
  return {{"orbit_id", p.orbit_id ? json(*p.orbit_id) : json(nullptr)},
          {"k", p.k},
          {"point", to_json(p.point)},
          {"action", p.action},
          {"residual_norm", p.residual_norm},
          {"g", p.g},
          {"min_singular_value", p.min_singular_value},
          {"nondegenerate", p.nondegenerate},
          {"continuum", p.continuum}};
}

json to_json(const LemmaReport& r) {
  return {{"k1", r.k1},
          {"k2", r.k2},
          {"residual_k1", r.residual_k1},
          {"residual_k2", r.residual_k2},
          {"residual_derived", r.residual_derived},
          {"g_k1", r.g_k1},
          {"g_k2", r.g_k2},
          {"g_derived", r.g_derived},
          {"cocycle_error", r.cocycle_error},
          {"derived_point", r.derived.n() > 0 ? to_json(r.derived) : json(nullptr)},
          {"passed", r.passed}};
}

json to_json(const ZeroWallReport& r) {
  json points = json::array();
  for (const auto& p : r.points)
    points.push_back({{"orbit_id", p.orbit_id},
                      {"point", to_json(p.point)},
                      {"p_norm", p.p_norm},
                      {"theta", p.theta},
                      {"action", p.action},
                      {"passed", p.passed}});
  json discrepancies = json::array();
  for (const auto& d : r.discrepancies)
    discrepancies.push_back(
        {{"point", to_json(d.point)}, {"p_norm", d.p_norm}, {"theta", d.theta}, {"reason", d.reason}});
  return {{"k", r.k},
          {"tol", r.tol},
          {"passed", r.passed},
          {"checked", r.points.size()},
          {"max_p_norm", r.max_p_norm},
          {"max_theta_error", r.max_theta_error},
          {"converse_zeros", r.converse_zeros},
          {"converse_outside_window", r.converse_outside_window},
          {"discrepancies", discrepancies},
          {"points", points}};
}

json census_json(const CensusRun& run) {
  const CensusReport& rep = run.report;
  json out = json::object();
  out["config_echo"] = json::parse(serialize_config(run.config));

  json per_k = json::array();
  for (const auto& s : rep.per_k) {
    json reps = json::array();
    std::vector<double> actions;
    for (const auto& p : s.representatives) {
      reps.push_back(to_json(p));
      actions.push_back(p.action);
    }
    std::sort(actions.begin(), actions.end());
    json entry = {{"k", s.k},
                  {"seed_count", s.seed_count},
                  {"converged_count", s.converged_count},
                  {"trivial_count", s.trivial_count},
                  {"member_count", s.member_count},
                  {"cumulative_distinct", s.cumulative_distinct},
                  {"max_action", optional_number(s.max_action)},
                  {"actions", actions},
                  {"representatives", reps},
                  {"diagnostic", s.diagnostic},
                  {"error", s.error ? json(*s.error) : json(nullptr)}};
    for (const auto& g : run.graph)
      if (g.k == s.k) entry["zero_wall"] = to_json(g);
    per_k.push_back(entry);
  }
  out["per_k"] = per_k;

  json clusters = json::array();
  for (const auto& c : rep.clusters) {
    json entry = {{"id", c.id},
                  {"ks", c.ks},
                  {"member_count", c.member_count},
                  {"continuum", c.continuum},
                  {"representative", to_json(c.representative)},
                  {"mean_planar_radius_sq", c.mean_planar_radius_sq}};
    clusters.push_back(entry);
  }
  json lemmas = json::array();
  for (const auto& l : run.lemmas) lemmas.push_back(to_json(l));
  out["distinct_clusters"] = {{"count", rep.distinct_count()},
                              {"total_points", rep.total_count()},
                              {"clusters", clusters},
                              {"lemma_checks", lemmas}};

  json periodic = json::array();
  for (const auto& p : rep.periodic_points)
    periodic.push_back(
        {{"orbit_id", p.orbit_id}, {"k", p.k}, {"point", to_json(p.point)}, {"g", p.g}, {"action", p.action}});
  out["periodic_points"] = periodic;

  json coincidences = json::array();
  for (const auto& c : rep.coincidences)
    coincidences.push_back(
        {{"orbit_id", c.orbit_id}, {"k1", c.k1}, {"k2", c.k2}, {"action1", c.action1}, {"action2", c.action2}});
  out["flags"] = {{"identity_like", rep.flags.identity_like},
                  {"monotone_max_action", rep.flags.monotone_max_action},
                  {"integer_action_coincidence", rep.flags.integer_action_coincidence},
                  {"none_found", rep.flags.none_found},
                  {"invariants_passed", run.invariants_passed()},
                  {"invariant_failures", run.invariant_failures},
                  {"reverify_action_error", run.reverify_action_error},
                  {"coincidences", coincidences}};
  out["errors"] = rep.errors;
  return out;
}

std::string census_csv(const CensusReport& report) {
  std::string out = "k,action,orbit_id,nondegenerate,residual_norm,continuum_flag\n";
  for (const auto& s : report.per_k)
    for (const auto& p : s.representatives) {
      out += std::to_string(p.k) + "," + format_double(p.action) + "," +
             (p.orbit_id ? std::to_string(*p.orbit_id) : std::string()) + "," + (p.nondegenerate ? "1" : "0") + "," +
             format_double(p.residual_norm) + "," + (p.continuum ? "1" : "0") + "\n";
    }
  return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace contactlab
