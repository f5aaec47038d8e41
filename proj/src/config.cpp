#include "qcc/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "qcc/model.hpp"
#include "qcc/rng.hpp"

namespace qcc {

using nlohmann::json;
using nlohmann::ordered_json;

std::string loop_name(EmptyLoop loop) {
  switch (loop) {
    case EmptyLoop::Front: return "front";
    case EmptyLoop::Outer: return "outer";
    case EmptyLoop::Rear: return "rear";
  }
  return "?";
}

EmptyLoop parse_loop(std::string_view name) {
  if (name == "front") return EmptyLoop::Front;
  if (name == "outer") return EmptyLoop::Outer;
  if (name == "rear") return EmptyLoop::Rear;
  throw std::invalid_argument("unknown loop '" + std::string(name) + "'");
}

EmptyLoop loop_of(int path_a, int path_b) {
  const int lo = std::min(path_a, path_b);
  const int hi = std::max(path_a, path_b);
  if (lo == 0 && hi == 1) return EmptyLoop::Front;
  if (lo == 1 && hi == 2) return EmptyLoop::Rear;
  if (lo == 0 && hi == 2) return EmptyLoop::Outer;
  throw std::invalid_argument("a loop needs two distinct paths among I..III");
}

double ImperfectionModel::coherence(int path_a, int path_b) const {
  if (path_a == path_b) return 1.0;
  return contrast(loop_of(path_a, path_b));
}

void ImperfectionModel::validate() const {
  for (double c : contrast_empty) {
    if (!(c >= 0.0 && c <= 1.0)) throw ConfigError("contrast_empty values must lie in [0, 1]");
  }
  if (!(prep_leak_angle >= 0.0 && prep_leak_angle <= std::numbers::pi / 4)) {
    throw ConfigError("prep_leak_angle must lie in [0, pi/4]");
  }
  if (!(efficiency_rot >= 0.0 && efficiency_rot <= 1.0)) {
    throw ConfigError("efficiency_rot must lie in [0, 1]");
  }
}

ImperfectionModel ImperfectionModel::paper_like() {
  ImperfectionModel m;
  m.contrast_empty = {0.57, 0.53, 0.50};
  // leak amplitude sin(eps/2) ~ 0.02: about 2 % residual contrast when path I
  // or III is swept, about 4 % when path II is
  m.prep_leak_angle = 0.04;
  m.efficiency_rot = 1.0;
  return m;
}

void CountingModel::validate() const {
  if (!(mean_counts_baseline >= 1.0) || !std::isfinite(mean_counts_baseline)) {
    throw ConfigError("mean_counts_baseline must be >= 1");
  }
}

// ---------------------------------------------------------------------------

ExperimentConfig::ExperimentConfig()
    : alpha_rot(std::numbers::pi / 9.0), chi_span(4.0 * std::numbers::pi) {}

std::vector<double> ExperimentConfig::chi_grid() const {
  std::vector<double> grid(static_cast<std::size_t>(n_points));
  for (int k = 0; k < n_points; ++k) grid[static_cast<std::size_t>(k)] = chi_span * k / n_points;
  return grid;
}

void ExperimentConfig::validate() const {
  if (n_paths != 3) throw ConfigError("the interferometer pipeline supports n_paths = 3 only");
  if (!(alpha_rot > 0.0 && alpha_rot < 2.0 * std::numbers::pi)) {
    throw ConfigError("alpha_rot must lie in (0, 2pi)");
  }
  if (!(absorption > 0.0 && absorption <= 1.0)) throw ConfigError("absorption must lie in (0, 1]");
  if (!(alpha_rot_err >= 0.0) || !(absorption_err >= 0.0)) {
    throw ConfigError("parameter errors must be non-negative");
  }
  if (n_points < 5) throw ConfigError("n_points must be >= 5");
  if (!(chi_span > 0.0) || !std::isfinite(chi_span)) throw ConfigError("chi_span must be positive");
  if (!(nominal_omega > 0.0)) throw ConfigError("nominal_omega must be positive");
  imperfections.validate();
  counting.validate();
}

ExperimentConfig ExperimentConfig::ideal() { return ExperimentConfig(); }

ExperimentConfig ExperimentConfig::paper_like() {
  ExperimentConfig cfg;
  cfg.imperfections = ImperfectionModel::paper_like();
  return cfg;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

template <class T>
void read_if(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end()) out = it->get<T>();
}

void reject_unknown(const json& j, std::initializer_list<const char*> known, const char* where) {
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ConfigError(std::string("unknown key '") + key + "' in " + where);
  }
}

}  // namespace

ordered_json to_json(const ExperimentConfig& cfg) {
  ordered_json j;
  j["n_paths"] = cfg.n_paths;
  j["alpha_rot"] = cfg.alpha_rot;
  j["alpha_rot_err"] = cfg.alpha_rot_err;
  j["absorption"] = cfg.absorption;
  j["absorption_err"] = cfg.absorption_err;
  j["n_points"] = cfg.n_points;
  j["chi_span"] = cfg.chi_span;
  j["nominal_omega"] = cfg.nominal_omega;
  ordered_json contrast;
  for (EmptyLoop l : {EmptyLoop::Front, EmptyLoop::Outer, EmptyLoop::Rear}) {
    contrast[loop_name(l)] = cfg.imperfections.contrast(l);
  }
  j["imperfections"] = {{"contrast_empty", contrast},
                        {"prep_leak_angle", cfg.imperfections.prep_leak_angle},
                        {"efficiency_rot", cfg.imperfections.efficiency_rot}};
  j["counting"] = {{"mean_counts_baseline", cfg.counting.mean_counts_baseline},
                   {"seed", cfg.counting.seed}};
  ordered_json mapping;
  for (int p = 0; p < kNumPaths; ++p) {
    mapping[path_name(p)] = loop_name(cfg.contrast_loop_for_path[static_cast<std::size_t>(p)]);
  }
  j["contrast_loop_for_path"] = mapping;
  return j;
}

ExperimentConfig experiment_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("experiment config must be an object");
  try {
    ExperimentConfig cfg;
    if (auto it = j.find("preset"); it != j.end()) {
      const auto preset = it->get<std::string>();
      if (preset == "paper") {
        cfg = ExperimentConfig::paper_like();
      } else if (preset != "ideal") {
        throw ConfigError("unknown preset '" + preset + "'");
      }
    }
    reject_unknown(j,
                   {"preset", "n_paths", "alpha_rot", "alpha_rot_err", "absorption",
                    "absorption_err", "n_points", "chi_span", "nominal_omega", "imperfections",
                    "counting", "contrast_loop_for_path"},
                   "experiment");
    read_if(j, "n_paths", cfg.n_paths);
    read_if(j, "alpha_rot", cfg.alpha_rot);
    read_if(j, "alpha_rot_err", cfg.alpha_rot_err);
    read_if(j, "absorption", cfg.absorption);
    read_if(j, "absorption_err", cfg.absorption_err);
    read_if(j, "n_points", cfg.n_points);
    read_if(j, "chi_span", cfg.chi_span);
    read_if(j, "nominal_omega", cfg.nominal_omega);
    if (auto it = j.find("imperfections"); it != j.end()) {
      const json& im = *it;
      reject_unknown(im, {"contrast_empty", "prep_leak_angle", "efficiency_rot"}, "imperfections");
      if (auto c = im.find("contrast_empty"); c != im.end()) {
        if (c->is_array()) {
          const auto values = c->get<std::vector<double>>();
          if (values.size() != 3) throw ConfigError("contrast_empty needs three values");
          std::copy(values.begin(), values.end(), cfg.imperfections.contrast_empty.begin());
        } else {
          for (const auto& [key, value] : c->items()) {
            cfg.imperfections.contrast_empty[static_cast<std::size_t>(parse_loop(key))] =
                value.get<double>();
          }
        }
      }
      read_if(im, "prep_leak_angle", cfg.imperfections.prep_leak_angle);
      read_if(im, "efficiency_rot", cfg.imperfections.efficiency_rot);
    }
    if (auto it = j.find("counting"); it != j.end()) {
      reject_unknown(*it, {"mean_counts_baseline", "seed"}, "counting");
      read_if(*it, "mean_counts_baseline", cfg.counting.mean_counts_baseline);
      read_if(*it, "seed", cfg.counting.seed);
    }
    if (auto it = j.find("contrast_loop_for_path"); it != j.end()) {
      for (const auto& [key, value] : it->items()) {
        cfg.contrast_loop_for_path[static_cast<std::size_t>(parse_path(key))] =
            parse_loop(value.get<std::string>());
      }
    }
    cfg.validate();
    return cfg;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

ordered_json to_json(const RunConfig& cfg) {
  ordered_json j;
  j["experiment"] = to_json(cfg.experiment);
  j["output_dir"] = cfg.output_dir;
  j["format"] = cfg.format == OutputFormat::Csv ? "csv" : "json";
  return j;
}

RunConfig run_config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(j, {"experiment", "output_dir", "format"}, "config");
  RunConfig cfg;
  try {
    if (auto it = j.find("experiment"); it != j.end()) cfg.experiment = experiment_from_json(*it);
    read_if(j, "output_dir", cfg.output_dir);
    if (auto it = j.find("format"); it != j.end()) {
      const auto f = it->get<std::string>();
      if (f == "csv") {
        cfg.format = OutputFormat::Csv;
      } else if (f == "json") {
        cfg.format = OutputFormat::Json;
      } else {
        throw ConfigError("format must be csv or json");
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  return cfg;
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

json scalar_value(const std::string& text) {
  if (text == "true") return true;
  if (text == "false") return false;
  std::uint64_t u = 0;
  auto [pu, eu] = std::from_chars(text.data(), text.data() + text.size(), u);
  if (eu == std::errc() && pu == text.data() + text.size()) return u;
  double d = 0.0;
  auto [pd, ed] = std::from_chars(text.data(), text.data() + text.size(), d);
  if (ed == std::errc() && pd == text.data() + text.size()) return d;
  return text;
}

json parse_key_value(std::string_view text) {
  json root = json::object();
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string raw = trim(std::string_view(t).substr(eq + 1));
    if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");

    json value;
    if (raw.find(',') != std::string::npos) {
      value = json::array();
      std::istringstream items(raw);
      std::string item;
      while (std::getline(items, item, ',')) value.push_back(scalar_value(trim(item)));
    } else {
      value = scalar_value(raw);
    }

    json* node = &root;
    std::string_view rest = key;
    for (auto dot = rest.find('.'); dot != std::string_view::npos; dot = rest.find('.')) {
      node = &(*node)[std::string(rest.substr(0, dot))];
      rest = rest.substr(dot + 1);
    }
    (*node)[std::string(rest)] = std::move(value);
  }
  return root;
}

}  // namespace

RunConfig parse_run_config(std::string_view text) {
  const std::string t = trim(text);
  if (!t.empty() && t[0] == '{') {
    json j;
    try {
      j = json::parse(t);
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return run_config_from_json(j);
  }
  json j = parse_key_value(text);
  // key=value files may put experiment keys at top level
  json wrapped = json::object();
  json experiment = j.contains("experiment") ? j["experiment"] : json::object();
  for (auto& [key, value] : j.items()) {
    if (key == "output_dir" || key == "format") {
      wrapped[key] = value;
    } else if (key != "experiment") {
      experiment[key] = value;
    }
  }
  wrapped["experiment"] = experiment;
  return run_config_from_json(wrapped);
}

std::string serialize_run_config(const RunConfig& cfg) { return to_json(cfg).dump(2) + "\n"; }

std::string config_hash(const ExperimentConfig& cfg) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(to_json(cfg).dump())));
  return buf;
}

}  // namespace qcc
