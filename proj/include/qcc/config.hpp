#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace qcc {

/// Two-path empty-interferometer loops. Front = I/II, outer = I/III,
/// rear = II/III.
enum class EmptyLoop { Front = 0, Outer = 1, Rear = 2 };

std::string loop_name(EmptyLoop loop);
EmptyLoop parse_loop(std::string_view name);

/// Loop formed by two distinct paths.
EmptyLoop loop_of(int path_a, int path_b);

struct ImperfectionModel {
  /// Empty-interferometer contrast per loop, indexed by EmptyLoop. Every
  /// interference cross term between two paths is scaled by its loop's value.
  std::array<double, 3> contrast_empty{1.0, 1.0, 1.0};
  /// Flip-angle deficit of both preparation flippers (pi - eps rotations).
  double prep_leak_angle = 0.0;
  /// Fraction of the nominal weak rotation angle actually applied.
  double efficiency_rot = 1.0;

  double contrast(EmptyLoop loop) const { return contrast_empty[static_cast<int>(loop)]; }
  double coherence(int path_a, int path_b) const;
  void validate() const;

  static ImperfectionModel ideal() { return {}; }
  static ImperfectionModel paper_like();

  friend bool operator==(const ImperfectionModel&, const ImperfectionModel&) = default;
};

struct CountingModel {
  /// Expected counts per point at the undisturbed intensity 1/9.
  double mean_counts_baseline = 4000.0;
  std::uint64_t seed = 1;

  void validate() const;
  friend bool operator==(const CountingModel&, const CountingModel&) = default;
};

struct ExperimentConfig {
  int n_paths = 3;
  double alpha_rot;        ///< weak rotation angle, radians
  double alpha_rot_err = 0.0;
  double absorption = 0.1;
  double absorption_err = 0.01;
  int n_points = 16;
  double chi_span;         ///< sweep covers [0, chi_span)
  double nominal_omega = 2.0;
  ImperfectionModel imperfections;
  CountingModel counting;
  /// Loop whose empty contrast normalizes cells swept in path I, II, III.
  std::array<EmptyLoop, 3> contrast_loop_for_path{EmptyLoop::Front, EmptyLoop::Outer,
                                                  EmptyLoop::Rear};

  ExperimentConfig();

  std::vector<double> chi_grid() const;
  void validate() const;

  /// No imperfections; counting model at defaults.
  static ExperimentConfig ideal();
  /// Loop contrasts 57/53/50 %, a few percent residual preparation contrast.
  static ExperimentConfig paper_like();

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

enum class OutputFormat { Csv, Json };

/// Everything the command-line front end needs for one run.
struct RunConfig {
  ExperimentConfig experiment;
  std::string output_dir = ".";
  OutputFormat format = OutputFormat::Csv;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

nlohmann::ordered_json to_json(const ExperimentConfig& cfg);
ExperimentConfig experiment_from_json(const nlohmann::json& j);

nlohmann::ordered_json to_json(const RunConfig& cfg);
RunConfig run_config_from_json(const nlohmann::json& j);

/// Accepts JSON, or key=value lines with dotted keys for nested fields
/// (e.g. "imperfections.prep_leak_angle = 0.05"). Throws ConfigError.
RunConfig parse_run_config(std::string_view text);
std::string serialize_run_config(const RunConfig& cfg);

/// 16 hex digits identifying an experiment configuration.
std::string config_hash(const ExperimentConfig& cfg);

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qcc
