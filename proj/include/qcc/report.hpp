#pragma once

// Reproduction reports: simulated values next to ideal theory and the
// published numbers, as ordered JSON plus a plain-text rendering.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "qcc/config.hpp"
#include "qcc/pipeline.hpp"

namespace qcc {

enum class ReportTarget { Table1, Table2, Table3, Fig6, Fig7, Fig8 };

std::string target_name(ReportTarget t);
/// Throws std::invalid_argument naming the unknown target.
ReportTarget parse_target(std::string_view name);

/// Location of the bundled published values.
std::filesystem::path default_published_path();
/// Throws std::runtime_error if the file is missing or malformed.
nlohmann::json load_published(const std::filesystem::path& path);

struct AdjustOptions {
  double i_flip = 1.5;  ///< A
  double k = 2.0;       ///< rad / A
  double floor = 0.03;
  double current_lo = 1.0;
  double current_hi = 2.0;
  int n_currents = 41;

  void validate() const;
};

struct ReportRequest {
  ReportTarget target = ReportTarget::Table2;
  ExperimentConfig experiment;
  bool noise = true;
  AdjustOptions adjust;
};

struct Report {
  nlohmann::ordered_json json;
  std::string text;
  /// Plot-ready table for figure targets.
  std::optional<std::string> csv;
};

/// Runs whatever the target needs (the full pipeline for tables and
/// weak-value/mean figures, the adjustment scan for fig8).
Report make_report(const ReportRequest& req, const nlohmann::json& published);

/// Agreement within three combined standard deviations.
bool agrees(double a, double da, double b, double db);

}  // namespace qcc
