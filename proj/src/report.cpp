#include "qcc/report.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "qcc/interferogram_io.hpp"
#include "qcc/synth.hpp"

#ifndef QCC_DATA_DIR
#define QCC_DATA_DIR "data"
#endif

namespace qcc {

namespace {

using ojson = nlohmann::ordered_json;

struct Row {
  InteractionKind kind;
  int path;
  Measured sim;
  double theory;
  Measured pub;
};

ojson measured(Measured m) { return ojson{{"value", m.value}, {"error", m.error}}; }

Measured pub_cell(const nlohmann::json& table, std::size_t r, std::size_t c) {
  try {
    return {table.at("value").at(r).at(c).get<double>(), table.at("error").at(r).at(c).get<double>()};
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("published values are malformed: ") + e.what());
  }
}

const nlohmann::json& pub_table(const nlohmann::json& published, const char* key) {
  if (!published.contains(key)) throw std::runtime_error(std::string("published values lack ") + key);
  return published.at(key);
}

ExperimentConfig ideal_of(const ExperimentConfig& cfg) {
  ExperimentConfig ideal = cfg;
  ideal.imperfections = ImperfectionModel::ideal();
  return ideal;
}

ojson header(const ReportRequest& req, const char* title) {
  ojson j;
  j["target"] = target_name(req.target);
  j["title"] = title;
  j["seed"] = req.experiment.counting.seed;
  j["noise"] = req.noise ? "on" : "off";
  j["config_hash"] = config_hash(req.experiment);
  j["config"] = to_json(req.experiment);
  return j;
}

ojson rows_json(const std::vector<Row>& rows, bool with_pub) {
  ojson cells = ojson::array();
  for (const Row& r : rows) {
    ojson c;
    c["interaction"] = kind_name(r.kind);
    c["path"] = path_name(r.path);
    c["simulated"] = measured(r.sim);
    c["theory"] = r.theory;
    if (with_pub) {
      c["published"] = measured(r.pub);
      c["agrees_published"] = agrees(r.sim.value, r.sim.error, r.pub.value, r.pub.error);
    }
    cells.push_back(std::move(c));
  }
  return cells;
}

std::string rows_text(const std::vector<Row>& rows, int digits) {
  std::string out;
  for (const Row& r : rows) {
    out += fmt::format("{:<4}{:<4} sim {:>8.{}f} +- {:<8.{}f} theory {:>8.{}f}   published {:>6.{}f} +- {:<6.{}f} {}\n",
                       kind_name(r.kind), path_name(r.path), r.sim.value, digits, r.sim.error, digits,
                       r.theory, digits, r.pub.value, digits, r.pub.error, digits,
                       agrees(r.sim.value, r.sim.error, r.pub.value, r.pub.error) ? "agrees" : "differs");
  }
  return out;
}

std::string rows_csv(const std::vector<Row>& rows) {
  std::string out = "interaction,path,simulated,error,theory,published,published_error\n";
  for (const Row& r : rows) {
    out += fmt::format("{},{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", kind_name(r.kind),
                       path_name(r.path), r.sim.value, r.sim.error, r.theory, r.pub.value, r.pub.error);
  }
  return out;
}

std::string title_line(const ojson& j) {
  return fmt::format("{}: {} (seed {}, noise {}, config {})\n", j["target"].get<std::string>(),
                     j["title"].get<std::string>(), j["seed"].get<std::uint64_t>(),
                     j["noise"].get<std::string>(), j["config_hash"].get<std::string>());
}

Report contrast_report(const ReportRequest& req, const nlohmann::json& published) {
  const PipelineResult sim = run_pipeline(req.experiment, req.noise);
  const PipelineResult ideal = run_pipeline(ideal_of(req.experiment), false);
  const auto& table = pub_table(published, "table1_prep_contrast_percent");
  std::vector<Row> rows;
  for (std::size_t n = 0; n < 9; ++n) {
    const CellAnalysis& c = sim.cells[n];
    rows.push_back({c.kind, c.path, {100.0 * c.prep_contrast.value, 100.0 * c.prep_contrast.error},
                    100.0 * ideal.cells[n].prep_contrast.value, pub_cell(table, n / 3, n % 3)});
  }
  Report rep;
  rep.json = header(req, "preparation contrasts in percent");
  rep.json["cells"] = rows_json(rows, true);
  ojson loops = ojson::array();
  const auto& pub_empty = pub_table(published, "empty_contrast_percent");
  for (const LoopAnalysis& l : sim.empty) {
    const auto i = static_cast<std::size_t>(l.loop);
    const Measured pub{pub_empty.at("value").at(i).get<double>(), pub_empty.at("error").at(i).get<double>()};
    const Measured s{100.0 * l.contrast.value, 100.0 * l.contrast.error};
    loops.push_back({{"loop", loop_name(l.loop)},
                     {"simulated", measured(s)},
                     {"published", measured(pub)},
                     {"agrees_published", agrees(s.value, s.error, pub.value, pub.error)}});
  }
  rep.json["empty_contrast_percent"] = loops;
  rep.text = title_line(rep.json) + rows_text(rows, 2);
  for (const auto& l : loops) {
    rep.text += fmt::format("empty {:<6} sim {:>6.2f} +- {:<5.2f} published {:>5.1f} +- {:<4.1f}\n",
                            l["loop"].get<std::string>(), l["simulated"]["value"].get<double>(),
                            l["simulated"]["error"].get<double>(), l["published"]["value"].get<double>(),
                            l["published"]["error"].get<double>());
  }
  return rep;
}

std::vector<Row> weak_value_rows(const PipelineResult& sim, const nlohmann::json& published) {
  const auto& table = pub_table(published, "table2_weak_values");
  std::vector<Row> rows;
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 3; ++c) {
      rows.push_back({kRowKinds[r], static_cast<int>(c), sim.matrix.cell[r][c], r == c ? 1.0 : 0.0,
                      pub_cell(table, r, c)});
    }
  }
  return rows;
}

Report weak_value_report(const ReportRequest& req, const nlohmann::json& published, bool figure) {
  const PipelineResult sim = run_pipeline(req.experiment, req.noise);
  const std::vector<Row> rows = weak_value_rows(sim, published);
  Report rep;
  rep.json = header(req, figure ? "weak values, plot data" : "weak-value matrix");
  rep.json["cells"] = rows_json(rows, true);
  rep.text = title_line(rep.json) + rows_text(rows, 3);
  if (figure) {
    rep.csv = rows_csv(rows);
    return rep;
  }
  const auto& t2 = pub_table(published, "table2_weak_values");
  ojson sums;
  for (const char* which : {"row_sum", "col_sum"}) {
    const bool row = std::string_view(which) == "row_sum";
    ojson list = ojson::array();
    for (std::size_t k = 0; k < 3; ++k) {
      const Measured s = row ? sim.matrix.row_sum[k] : sim.matrix.col_sum[k];
      const Measured p{t2.at(which).at("value").at(k).get<double>(), t2.at(which).at("error").at(k).get<double>()};
      list.push_back({{row ? "interaction" : "path", row ? kind_name(kRowKinds[k]) : path_name(static_cast<int>(k))},
                      {"simulated", measured(s)},
                      {"theory", 1.0},
                      {"published", measured(p)},
                      {"agrees_published", agrees(s.value, s.error, p.value, p.error)}});
      rep.text += fmt::format("{} {:<4} sim {:>8.3f} +- {:<8.3f} theory    1.000   published {:>6.3f} +- {:<6.3f}\n",
                              row ? "row sum" : "col sum",
                              row ? kind_name(kRowKinds[k]) : path_name(static_cast<int>(k)), s.value,
                              s.error, p.value, p.error);
    }
    sums[row ? "row_sums" : "col_sums"] = list;
  }
  rep.json["sums"] = sums;
  return rep;
}

Report mean_report(const ReportRequest& req, const nlohmann::json& published, bool figure) {
  const PipelineResult sim = run_pipeline(req.experiment, req.noise);
  const PipelineResult ideal = run_pipeline(ideal_of(req.experiment), false);
  const auto& table = pub_table(published, "table3_mean_ratio");
  std::vector<Row> rows;
  for (std::size_t n = 0; n < 9; ++n) {
    const MeanIntensityRow& m = sim.mean_intensity[n];
    Row r{m.kind, m.path, m.ratio, ideal.mean_intensity[n].ratio.value, pub_cell(table, n / 3, n % 3)};
    if (figure) {
      // relative change in percent
      r.sim = {100.0 * (r.sim.value - 1.0), 100.0 * r.sim.error};
      r.theory = 100.0 * (r.theory - 1.0);
      r.pub = {100.0 * (r.pub.value - 1.0), 100.0 * r.pub.error};
    }
    rows.push_back(r);
  }
  Report rep;
  rep.json = header(req, figure ? "relative mean-intensity change in percent, plot data"
                                : "mean intensity ratios weak / preparation");
  rep.json["cells"] = rows_json(rows, true);
  ojson flags = ojson::array();
  for (const MeanIntensityRow& m : sim.mean_intensity) {
    flags.push_back({{"interaction", kind_name(m.kind)},
                     {"path", path_name(m.path)},
                     {"expected_ratio", m.expected},
                     {"consistent", m.consistent}});
  }
  rep.json["expected_shift"] = flags;
  rep.text = title_line(rep.json) + rows_text(rows, figure ? 2 : 4);
  if (figure) rep.csv = rows_csv(rows);
  return rep;
}

Report adjustment_report(const ReportRequest& req, const nlohmann::json& published) {
  const AdjustOptions& a = req.adjust;
  a.validate();
  std::vector<double> currents;
  for (int i = 0; i < a.n_currents; ++i) {
    currents.push_back(a.current_lo + (a.current_hi - a.current_lo) * i / (a.n_currents - 1));
  }
  const double c_max = req.experiment.imperfections.contrast(EmptyLoop::Front);
  const auto curve = adjustment_scan(currents, a.i_flip, a.k, a.floor, c_max);
  std::size_t best = 0;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    if (curve[i].second < curve[best].second) best = i;
  }

  Report rep;
  rep.json = header(req, "contrast versus flipper current, plot data");
  rep.json["i_flip"] = a.i_flip;
  rep.json["k"] = a.k;
  rep.json["floor"] = a.floor;
  rep.json["c_max"] = c_max;
  ojson pts = ojson::array();
  std::string csv = "current_A,contrast\n";
  for (const auto& [i, c] : curve) {
    pts.push_back({{"current", i}, {"contrast", c}});
    csv += fmt::format("{:.17g},{:.17g}\n", i, c);
  }
  rep.json["points"] = pts;
  rep.json["minimum"] = {{"current", curve[best].first}, {"contrast", curve[best].second}};
  const auto& pub = pub_table(published, "adjustment");
  rep.json["published"] = {{"i_flip", pub.at("i_flip_A").get<double>()},
                           {"residual_contrast", pub.at("residual_contrast").get<double>()}};
  rep.text = title_line(rep.json) +
             fmt::format("minimum at {:.4f} A with contrast {:.4f} (i_flip {:.4f} A, floor {:.4f})\n"
                         "published: minimum at {:.2f} A, residual contrast {:.2f}\n",
                         curve[best].first, curve[best].second, a.i_flip, a.floor,
                         pub.at("i_flip_A").get<double>(), pub.at("residual_contrast").get<double>());
  rep.csv = std::move(csv);
  return rep;
}

}  // namespace

std::string target_name(ReportTarget t) {
  switch (t) {
    case ReportTarget::Table1: return "table1";
    case ReportTarget::Table2: return "table2";
    case ReportTarget::Table3: return "table3";
    case ReportTarget::Fig6: return "fig6";
    case ReportTarget::Fig7: return "fig7";
    case ReportTarget::Fig8: return "fig8";
  }
  return "?";
}

ReportTarget parse_target(std::string_view name) {
  for (ReportTarget t : {ReportTarget::Table1, ReportTarget::Table2, ReportTarget::Table3,
                         ReportTarget::Fig6, ReportTarget::Fig7, ReportTarget::Fig8}) {
    if (name == target_name(t)) return t;
  }
  throw std::invalid_argument("unknown target '" + std::string(name) +
                              "' (expected table1, table2, table3, fig6, fig7 or fig8)");
}

std::filesystem::path default_published_path() {
  return std::filesystem::path(QCC_DATA_DIR) / "published_values.json";
}

nlohmann::json load_published(const std::filesystem::path& path) {
  try {
    return nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("cannot parse " + path.string() + ": " + e.what());
  }
}

void AdjustOptions::validate() const {
  if (n_currents < 2) throw std::invalid_argument("adjustment scan needs at least two currents");
  if (!(current_hi > current_lo)) throw std::invalid_argument("current range is empty");
  if (!(floor >= 0.0 && floor <= 1.0)) throw std::invalid_argument("contrast floor must lie in [0, 1]");
  if (!std::isfinite(i_flip) || !std::isfinite(k)) throw std::invalid_argument("adjustment parameters must be finite");
}

bool agrees(double a, double da, double b, double db) {
  return std::abs(a - b) <= 3.0 * std::hypot(da, db);
}

Report make_report(const ReportRequest& req, const nlohmann::json& published) {
  switch (req.target) {
    case ReportTarget::Table1: return contrast_report(req, published);
    case ReportTarget::Table2: return weak_value_report(req, published, false);
    case ReportTarget::Table3: return mean_report(req, published, false);
    case ReportTarget::Fig6: return mean_report(req, published, true);
    case ReportTarget::Fig7: return weak_value_report(req, published, true);
    case ReportTarget::Fig8: return adjustment_report(req, published);
  }
  throw std::invalid_argument("unknown target");
}

}  // namespace qcc
