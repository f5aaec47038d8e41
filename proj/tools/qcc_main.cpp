// qcc: simulate interferograms, fit them, reproduce the result tables and
// figures, and run the built-in oracle suites.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical failure.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "qcc/config.hpp"
#include "qcc/fit.hpp"
#include "qcc/interferogram_io.hpp"
#include "qcc/report.hpp"
#include "qcc/selftest.hpp"
#include "qcc/synth.hpp"

namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kUsage = 1, kData = 2, kNumeric = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string config_path;
  std::string preset;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::string format;
};

void add_common(CLI::App* cmd, Common& c, const std::string& default_preset) {
  auto* cfg = cmd->add_option("--config", c.config_path, "JSON or key=value run configuration")
                  ->check(CLI::ExistingFile);
  cmd->add_option("--preset", c.preset, "ideal or paper (default " + default_preset + ")")
      ->check(CLI::IsMember({"ideal", "paper"}))
      ->excludes(cfg);
  cmd->add_option("--seed", c.seed, "counting seed");
  cmd->add_option("--out", c.out_dir, "output directory (env QCC_OUTPUT_DIR when omitted)");
  cmd->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

qcc::RunConfig load_run(const Common& c, const std::string& default_preset) {
  qcc::RunConfig run;
  if (!c.config_path.empty()) {
    run = qcc::parse_run_config(qcc::read_text_file(c.config_path));
  } else {
    const std::string preset = c.preset.empty() ? default_preset : c.preset;
    run.experiment = preset == "paper" ? qcc::ExperimentConfig::paper_like() : qcc::ExperimentConfig::ideal();
  }
  if (c.seed) run.experiment.counting.seed = *c.seed;
  if (!c.out_dir.empty()) {
    run.output_dir = c.out_dir;
  } else if (const char* env = std::getenv("QCC_OUTPUT_DIR"); env && *env) {
    run.output_dir = env;
  }
  if (!c.format.empty()) run.format = c.format == "json" ? qcc::OutputFormat::Json : qcc::OutputFormat::Csv;
  run.experiment.validate();
  return run;
}

std::string file_stem(std::string label) {
  for (char& ch : label) {
    if (ch == ':' || ch == '@' || ch == '/') ch = '_';
  }
  return label;
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
  Common common;
  std::vector<std::string> scenarios;
  std::string noise = "off";
};

int cmd_simulate(const SimulateArgs& a) {
  const qcc::RunConfig run = load_run(a.common, "ideal");
  const qcc::ExperimentConfig& cfg = run.experiment;
  const bool json = run.format == qcc::OutputFormat::Json;
  const bool noise = a.noise == "on";
  const fs::path dir = run.output_dir;
  const char* ext = json ? ".json" : ".csv";

  std::vector<std::pair<std::string, qcc::Interferogram>> files;
  for (const std::string& s : a.scenarios) {
    if (s == "set") {
      const qcc::MeasurementSet set = qcc::run_measurement_set(cfg, noise);
      for (const auto& cell : set.cells) {
        const std::string base = qcc::kind_name(cell.kind) + "_" + qcc::path_name(cell.path);
        files.emplace_back(base + "_off", cell.prep);
        files.emplace_back(base + "_on", cell.weak);
      }
      for (const auto& e : set.empty) files.emplace_back(file_stem(e.meta.scenario), e);
      continue;
    }
    qcc::Scenario sc;
    try {
      sc = qcc::parse_scenario(s, cfg);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    qcc::Interferogram ifg = qcc::sweep_ideal(sc, qcc::Selection{}, cfg);
    if (noise) ifg = qcc::poissonize(ifg, cfg.counting);
    files.emplace_back(file_stem(sc.label()), std::move(ifg));
  }
  for (const auto& [stem, ifg] : files) {
    const fs::path path = dir / (stem + ext);
    qcc::write_interferogram(path, ifg, json);
    fmt::print("{}\n", path.string());
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct FitArgs {
  std::string file;
  std::optional<double> fix_omega;
  double nominal_omega = 2.0;
  std::string format = "json";
};

int cmd_fit(const FitArgs& a) {
  const qcc::Interferogram ifg = qcc::read_interferogram(a.file);
  qcc::FitOptions opts;
  opts.fixed_omega = a.fix_omega;
  opts.nominal_omega = a.nominal_omega;
  const qcc::FitResult fit = qcc::fit_sinusoid(ifg, opts);

  nlohmann::ordered_json j;
  j["file"] = a.file;
  j["scenario"] = ifg.meta.scenario;
  j["i0"] = {{"value", fit.i0}, {"error", fit.err(qcc::kI0)}};
  j["b"] = {{"value", fit.b}, {"error", fit.err(qcc::kB)}};
  j["omega"] = {{"value", fit.omega}, {"error", fit.err(qcc::kOmega)}, {"fixed", fit.omega_fixed}};
  j["phi"] = {{"value", fit.phi}, {"error", fit.err(qcc::kPhi)}};
  if (fit.i0 > 0.0) {
    const auto [c, dc] = qcc::contrast(fit);
    j["contrast"] = {{"value", c}, {"error", dc}};
  }
  j["chi2_red"] = fit.chi2_red;
  j["iterations"] = fit.iterations;
  nlohmann::ordered_json cov = nlohmann::ordered_json::array();
  for (const auto& row : fit.cov) cov.push_back(row);
  j["cov"] = cov;

  if (a.format == "json") {
    fmt::print("{}\n", j.dump(2));
  } else {
    fmt::print("i0     {:.10g} +- {:.3g}\n", fit.i0, fit.err(qcc::kI0));
    fmt::print("b      {:.10g} +- {:.3g}\n", fit.b, fit.err(qcc::kB));
    fmt::print("omega  {:.10g} +- {:.3g}{}\n", fit.omega, fit.err(qcc::kOmega), fit.omega_fixed ? " (fixed)" : "");
    fmt::print("phi    {:.10g} +- {:.3g}\n", fit.phi, fit.err(qcc::kPhi));
    if (j.contains("contrast")) {
      fmt::print("contrast {:.6g} +- {:.3g}\n", j["contrast"]["value"].get<double>(),
                 j["contrast"]["error"].get<double>());
    }
    fmt::print("chi2_red {:.6g}\n", fit.chi2_red);
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct ReproduceArgs {
  Common common;
  std::string target;
  std::string noise = "on";
  std::string published;
  qcc::AdjustOptions adjust;
};

int cmd_reproduce(const ReproduceArgs& a) {
  const qcc::RunConfig run = load_run(a.common, "paper");
  qcc::ReportRequest req;
  req.target = qcc::parse_target(a.target);
  req.experiment = run.experiment;
  req.noise = a.noise == "on";
  req.adjust = a.adjust;
  const fs::path pub = a.published.empty() ? qcc::default_published_path() : fs::path(a.published);
  const qcc::Report rep = qcc::make_report(req, qcc::load_published(pub));

  const fs::path dir = run.output_dir;
  qcc::write_text_file(dir / (a.target + ".json"), rep.json.dump(2) + "\n");
  qcc::write_text_file(dir / (a.target + ".txt"), rep.text);
  if (rep.csv) qcc::write_text_file(dir / (a.target + ".csv"), *rep.csv);
  fmt::print("{}", rep.text);
  return kOk;
}

// ---------------------------------------------------------------------------

int cmd_selftest(const std::optional<std::string>& corrupt) {
  qcc::SelftestOptions opts;
  opts.corrupt = corrupt;
  bool all = true;
  for (const qcc::SuiteResult& r : qcc::run_selftest(opts)) {
    fmt::print("[{}] {:<13} {} ({:.2f} s)\n", r.passed ? "PASS" : "FAIL", r.name, r.detail, r.seconds);
    all = all && r.passed;
  }
  fmt::print("{}\n", all ? "all suites passed" : "selftest FAILED");
  return all ? kOk : kNumeric;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Three-path interferometer weak-value simulator and analysis pipeline"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "write interferogram files for scenarios");
  add_common(simulate, sim.common, "ideal");
  simulate
      ->add_option("--scenario", sim.scenarios,
                   "empty:<loop>, prep[:<path>], weak:<dc|rf|abs>:<path>[@<path>], "
                   "adjust:<I>:<I_flip>:<k>, or set")
      ->required();
  simulate->add_option("--noise", sim.noise, "on or off")->check(CLI::IsMember({"on", "off"}));

  FitArgs fit;
  auto* fitcmd = app.add_subcommand("fit", "fit a sinusoid to an interferogram file");
  fitcmd->add_option("file", fit.file, "CSV or JSON interferogram")->required();
  fitcmd->add_option("--fix-omega", fit.fix_omega, "hold omega at this value");
  fitcmd->add_option("--nominal-omega", fit.nominal_omega, "centre of the omega search");
  fitcmd->add_option("--format", fit.format, "json or text")->check(CLI::IsMember({"json", "text"}));

  ReproduceArgs rp;
  auto* reproduce = app.add_subcommand("reproduce", "run the pipeline and write a report");
  add_common(reproduce, rp.common, "paper");
  reproduce->add_option("--target", rp.target, "table1, table2, table3, fig6, fig7 or fig8")
      ->required()
      ->check(CLI::IsMember({"table1", "table2", "table3", "fig6", "fig7", "fig8"}));
  reproduce->add_option("--noise", rp.noise, "on or off")->check(CLI::IsMember({"on", "off"}));
  reproduce->add_option("--published", rp.published, "published values JSON");
  reproduce->add_option("--i-flip", rp.adjust.i_flip, "fig8: flip current in A");
  reproduce->add_option("--k", rp.adjust.k, "fig8: rad per A");
  reproduce->add_option("--floor", rp.adjust.floor, "fig8: residual contrast");

  std::optional<std::string> corrupt;
  auto* selftest = app.add_subcommand("selftest", "run the oracle suites");
  selftest->add_option("--corrupt", corrupt, "test hook: break the named suite")
      ->check(CLI::IsMember(qcc::selftest_suites()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(sim);
    if (fitcmd->parsed()) return cmd_fit(fit);
    if (reproduce->parsed()) return cmd_reproduce(rp);
    if (selftest->parsed()) return cmd_selftest(corrupt);
  } catch (const UsageError& e) {
    fmt::print(stderr, "usage error: {}\n", e.what());
    return kUsage;
  } catch (const qcc::ConvergenceError& e) {
    fmt::print(stderr, "numerical failure: {}\n", e.what());
    return kNumeric;
  } catch (const qcc::FormatError& e) {
    fmt::print(stderr, "data error: {}\n", e.what());
    return kData;
  } catch (const qcc::ConfigError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return kData;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kData;
  }
  return kUsage;
}
