#include "qcc/synth.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "qcc/rng.hpp"

namespace qcc {

namespace {

constexpr double kBaseline = 1.0 / 9.0;

void check_path(int path) {
  if (path < 0 || path >= kNumPaths) throw std::invalid_argument("sweep path outside I..III");
}

int loop_sweep_path(EmptyLoop loop) { return loop == EmptyLoop::Rear ? 2 : 0; }

std::pair<int, int> loop_paths(EmptyLoop loop) {
  switch (loop) {
    case EmptyLoop::Front: return {0, 1};
    case EmptyLoop::Outer: return {0, 2};
    case EmptyLoop::Rear: return {1, 2};
  }
  throw std::invalid_argument("bad loop");
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_number(std::string_view text) {
  const std::string s(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad number '" + s + "' in scenario");
  }
  if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument("bad number '" + s + "' in scenario");
  return v;
}

double adjust_deficit(const AdjustSetting& a) { return 2.0 * a.k * (a.current - a.i_flip); }

Interaction applied(Interaction x, const ImperfectionModel& model) {
  if (x.kind != InteractionKind::Absorber) x.strength *= model.efficiency_rot;
  return x;
}

CVec scenario_state(const Scenario& sc, const ExperimentConfig& cfg) {
  const ImperfectionModel& model = cfg.imperfections;
  switch (sc.kind) {
    case ScenarioKind::Empty: {
      const auto [a, b] = loop_paths(sc.loop);
      const double amp = 1.0 / std::sqrt(3.0);
      CVec v(kModelDim);
      v[basis_index(a, Spin::Up, Energy::E0)] = amp;
      v[basis_index(b, Spin::Up, Energy::E0)] = amp;
      return v;
    }
    case ScenarioKind::Prep:
      return prepared_state(model, model.prep_leak_angle);
    case ScenarioKind::Weak: {
      const Interaction x = applied(sc.interaction, model);
      x.validate();
      return apply(interaction_operator(x), prepared_state(model, model.prep_leak_angle));
    }
    case ScenarioKind::AdjustScan:
      return prepared_state(model, adjust_deficit(sc.adjust));
  }
  throw std::invalid_argument("bad scenario kind");
}

}  // namespace

// ---------------------------------------------------------------------------

Scenario Scenario::empty(EmptyLoop loop) {
  Scenario s;
  s.kind = ScenarioKind::Empty;
  s.loop = loop;
  s.sweep_path = loop_sweep_path(loop);
  return s;
}

Scenario Scenario::prep(int sweep_path) {
  check_path(sweep_path);
  Scenario s;
  s.kind = ScenarioKind::Prep;
  s.sweep_path = sweep_path;
  return s;
}

Scenario Scenario::weak(Interaction x, int sweep_path) {
  x.validate();
  check_path(sweep_path);
  Scenario s;
  s.kind = ScenarioKind::Weak;
  s.interaction = x;
  s.sweep_path = sweep_path;
  return s;
}

Scenario Scenario::adjust_scan(AdjustSetting setting) {
  if (!std::isfinite(setting.current) || !std::isfinite(setting.i_flip) || !std::isfinite(setting.k)) {
    throw std::invalid_argument("adjustment setting must be finite");
  }
  Scenario s;
  s.kind = ScenarioKind::AdjustScan;
  s.adjust = setting;
  s.sweep_path = 2;
  return s;
}

int Scenario::swept_path() const {
  switch (kind) {
    case ScenarioKind::Empty: return loop_sweep_path(loop);
    case ScenarioKind::AdjustScan: return 2;
    default: return sweep_path;
  }
}

std::string Scenario::label() const {
  switch (kind) {
    case ScenarioKind::Empty: return "empty:" + loop_name(loop);
    case ScenarioKind::Prep: return "prep:" + path_name(sweep_path);
    case ScenarioKind::Weak: {
      std::string s = "weak:" + kind_name(interaction.kind) + ":" + path_name(interaction.path);
      if (sweep_path != interaction.path) s += "@" + path_name(sweep_path);
      return s;
    }
    case ScenarioKind::AdjustScan:
      return fmt::format("adjust:{}:{}:{}", adjust.current, adjust.i_flip, adjust.k);
  }
  return "?";
}

Scenario parse_scenario(std::string_view label, const ExperimentConfig& cfg) {
  const auto parts = split(label, ':');
  const std::string_view head = parts[0];
  if (head == "empty") {
    if (parts.size() != 2) throw std::invalid_argument("expected empty:<front|outer|rear>");
    return Scenario::empty(parse_loop(parts[1]));
  }
  if (head == "prep") {
    if (parts.size() == 1) return Scenario::prep(0);
    if (parts.size() != 2) throw std::invalid_argument("expected prep[:<path>]");
    return Scenario::prep(parse_path(parts[1]));
  }
  if (head == "weak") {
    if (parts.size() != 3) throw std::invalid_argument("expected weak:<dc|rf|abs>:<path>[@<path>]");
    const auto at = split(parts[2], '@');
    if (at.size() > 2) throw std::invalid_argument("more than one '@' in scenario");
    const int path = parse_path(at[0]);
    const int sweep = at.size() == 2 ? parse_path(at[1]) : path;
    return Scenario::weak(cell_interaction(parse_kind(parts[1]), path, cfg), sweep);
  }
  if (head == "adjust") {
    if (parts.size() != 4) throw std::invalid_argument("expected adjust:<current>:<i_flip>:<k>");
    return Scenario::adjust_scan(
        {parse_number(parts[1]), parse_number(parts[2]), parse_number(parts[3])});
  }
  throw std::invalid_argument("unknown scenario '" + std::string(label) + "'");
}

// ---------------------------------------------------------------------------

void Interferogram::validate() const {
  if (value.size() != chi.size() || sigma.size() != chi.size()) {
    throw std::invalid_argument("interferogram columns differ in length");
  }
  for (std::size_t i = 0; i < chi.size(); ++i) {
    if (!std::isfinite(chi[i]) || !std::isfinite(value[i])) {
      throw std::invalid_argument(fmt::format("non-finite entry at point {}", i));
    }
    if (!(sigma[i] > 0.0) || !std::isfinite(sigma[i])) {
      throw std::invalid_argument(fmt::format("sigma at point {} is not positive", i));
    }
    if (meta.counts && (value[i] < 0.0 || value[i] != std::floor(value[i]))) {
      throw std::invalid_argument(fmt::format("count at point {} is not a non-negative integer", i));
    }
  }
}

Selection swept_selection(const Selection& base, int path, double chi) {
  check_path(path);
  Selection s = base;
  if (path == 0 || path == 1) s.chi1 += chi;
  if (path == 2 || path == 1) s.chi2 += chi;
  return s;
}

CVec prepared_state(const ImperfectionModel& model, double rf_flip_deficit) {
  const double amp = 1.0 / std::sqrt(3.0);
  const double e1 = 0.5 * model.prep_leak_angle;
  const double e3 = 0.5 * rf_flip_deficit;
  const Complex i(0.0, 1.0);
  CVec v(kModelDim);
  v[basis_index(0, Spin::Down, Energy::E0)] = amp * std::cos(e1);
  v[basis_index(0, Spin::Up, Energy::E0)] = amp * i * std::sin(e1);
  v[basis_index(1, Spin::Up, Energy::E0)] = amp;
  v[basis_index(2, Spin::Down, Energy::EPrime)] = amp * std::cos(e3);
  v[basis_index(2, Spin::Up, Energy::E0)] = amp * i * std::sin(e3);
  return v;
}

double partially_coherent_intensity(const CVec& state, const Selection& sel,
                                    const ImperfectionModel& model) {
  if (state.dim() != kModelDim) throw DimensionError("state must be 12-dimensional");
  const double amp = 1.0 / std::sqrt(3.0);
  double total = 0.0;
  for (Energy e : {Energy::E0, Energy::EPrime}) {
    std::array<Complex, kNumPaths> a;
    for (int k = 0; k < kNumPaths; ++k) {
      a[k] = std::polar(amp, -postselection_phase(sel, k)) * state[basis_index(k, Spin::Up, e)];
    }
    for (int k = 0; k < kNumPaths; ++k) {
      total += std::norm(a[k]);
      for (int l = k + 1; l < kNumPaths; ++l) {
        total += 2.0 * model.coherence(k, l) * std::real(std::conj(a[k]) * a[l]);
      }
    }
  }
  return total;
}

double scenario_intensity(const Scenario& scenario, const Selection& sel,
                          const ExperimentConfig& cfg) {
  return partially_coherent_intensity(scenario_state(scenario, cfg), sel, cfg.imperfections);
}

Interferogram sweep_ideal(const Scenario& scenario, const Selection& base,
                          const ExperimentConfig& cfg) {
  cfg.validate();
  const CVec state = scenario_state(scenario, cfg);
  const int path = scenario.swept_path();
  const double scale = cfg.counting.mean_counts_baseline / kBaseline;

  Interferogram out;
  out.chi = cfg.chi_grid();
  out.value.reserve(out.chi.size());
  out.sigma.reserve(out.chi.size());
  for (double chi : out.chi) {
    const double v = partially_coherent_intensity(state, swept_selection(base, path, chi),
                                                  cfg.imperfections);
    out.value.push_back(v);
    out.sigma.push_back(std::sqrt(std::max(v * scale, 1.0)) / scale);
  }
  out.meta.scenario = scenario.label();
  out.meta.stream = out.meta.scenario;
  out.meta.seed = cfg.counting.seed;
  out.meta.config_hash = config_hash(cfg);
  return out;
}

Interferogram poissonize(const Interferogram& ifg, const CountingModel& counting) {
  counting.validate();
  if (ifg.meta.counts) throw std::invalid_argument("interferogram already holds sampled counts");
  ifg.validate();
  Interferogram out = ifg;
  const double scale = counting.mean_counts_baseline / kBaseline;
  for (std::size_t i = 0; i < ifg.size(); ++i) {
    const double mean = std::max(ifg.value[i], 0.0) * scale;
    const auto n = poisson_sample(mean, stream_key(counting.seed, ifg.meta.stream, i));
    out.value[i] = static_cast<double>(n);
    out.sigma[i] = std::sqrt(std::max(static_cast<double>(n), 1.0));
  }
  out.meta.seed = counting.seed;
  out.meta.counts = true;
  return out;
}

std::vector<std::pair<double, double>> adjustment_scan(std::span<const double> currents,
                                                       double i_flip, double k, double floor,
                                                       double c_max) {
  if (currents.empty()) throw std::invalid_argument("adjustment scan needs at least one current");
  if (!(floor >= 0.0 && floor <= 1.0) || !(c_max >= 0.0 && c_max <= 1.0)) {
    throw std::invalid_argument("contrast floor and maximum must lie in [0, 1]");
  }
  std::vector<std::pair<double, double>> out;
  out.reserve(currents.size());
  for (double current : currents) {
    out.emplace_back(current, std::max(floor, c_max * std::abs(std::sin(k * (current - i_flip)))));
  }
  return out;
}

// ---------------------------------------------------------------------------

const MeasurementPair& MeasurementSet::cell(InteractionKind kind, int path) const {
  for (const auto& c : cells) {
    if (c.kind == kind && c.path == path) return c;
  }
  throw std::out_of_range("no such measurement cell");
}

Interaction cell_interaction(InteractionKind kind, int path, const ExperimentConfig& cfg) {
  Interaction x{kind, path, kind == InteractionKind::Absorber ? cfg.absorption : cfg.alpha_rot};
  x.validate();
  return x;
}

MeasurementSet run_measurement_set(const ExperimentConfig& cfg, bool noise) {
  cfg.validate();
  const Selection base{};
  MeasurementSet set;
  auto finish = [&](Interferogram ifg, std::string stream) {
    ifg.meta.stream = std::move(stream);
    return noise ? poissonize(ifg, cfg.counting) : ifg;
  };
  std::size_t n = 0;
  for (InteractionKind kind : kRowKinds) {
    for (int path = 0; path < kNumPaths; ++path) {
      const std::string cell = kind_name(kind) + ":" + path_name(path);
      MeasurementPair& pair = set.cells[n++];
      pair.kind = kind;
      pair.path = path;
      pair.prep = finish(sweep_ideal(Scenario::prep(path), base, cfg), cell + "/off");
      pair.weak = finish(sweep_ideal(Scenario::weak(cell_interaction(kind, path, cfg), path), base, cfg),
                         cell + "/on");
    }
  }
  for (EmptyLoop loop : {EmptyLoop::Front, EmptyLoop::Outer, EmptyLoop::Rear}) {
    const Scenario sc = Scenario::empty(loop);
    set.empty[static_cast<int>(loop)] = finish(sweep_ideal(sc, base, cfg), sc.label());
  }
  return set;
}

}  // namespace qcc
