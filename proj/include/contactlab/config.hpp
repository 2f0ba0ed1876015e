#ifndef CONTACTLAB_CONFIG_HPP
#define CONTACTLAB_CONFIG_HPP

#include "contactlab/translated_points.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace contactlab {

/// Configuration problem, located by source path and field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, std::string field, std::string reason)
      : std::runtime_error(path + ": " + field + ": " + reason),
        path_(std::move(path)),
        field_(std::move(field)),
        reason_(std::move(reason)) {}
  const std::string& path() const { return path_; }
  const std::string& field() const { return field_; }
  const std::string& reason() const { return reason_; }

 private:
  std::string path_, field_, reason_;
};

struct ExperimentConfig {
  std::string family;
  NamedParams params;             // only the parameters given; catalog defaults fill the rest
  std::string manifold{"r2n1"};   // "r2n1" or "r2n-s1"
  int n{1};
  int K{1};
  int grid{20};
  double newton_tol{1e-9};
  double geom_tol{0.05};
  int steps_per_unit_time{2000};
  std::uint64_t seed{0};
  int threads{0};
  bool graph_converse{true};
  std::string report_path;  // JSON report
  std::string csv_path;     // action table
  std::string graph_path;   // graph-check report

  bool periodic_z() const { return manifold == "r2n-s1"; }
  bool operator==(const ExperimentConfig&) const = default;
};

/// Parses and validates a JSON configuration. `source` names the origin in errors.
ExperimentConfig parse_config(const std::string& text, const std::string& source = "<config>");
ExperimentConfig load_config(const std::string& path);
/// Canonical JSON text (all fields, defaults included).
std::string serialize_config(const ExperimentConfig& cfg);

ContactMap build_map(const ExperimentConfig& cfg);
CensusConfig census_config(const ExperimentConfig& cfg);

}  // namespace contactlab

#endif  // CONTACTLAB_CONFIG_HPP
