#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "qcc/fit.hpp"
#include "qcc/rng.hpp"
#include "qcc/synth.hpp"

using namespace qcc;

namespace {

constexpr double kPi = std::numbers::pi;

double fitted_contrast(const Interferogram& ifg, std::optional<double> omega = 2.0) {
  FitOptions o;
  o.fixed_omega = omega;
  return contrast(fit_sinusoid(ifg, o)).first;
}

Interferogram constant_ifg(double intensity, std::size_t n, const std::string& stream) {
  Interferogram ifg;
  for (std::size_t i = 0; i < n; ++i) {
    ifg.chi.push_back(static_cast<double>(i));
    ifg.value.push_back(intensity);
    ifg.sigma.push_back(1.0);
  }
  ifg.meta.stream = stream;
  return ifg;
}

}  // namespace

TEST(Rng, StreamKeysSeparate) {
  EXPECT_EQ(stream_key(1, "a", 0), stream_key(1, "a", 0));
  EXPECT_NE(stream_key(1, "a", 0), stream_key(2, "a", 0));
  EXPECT_NE(stream_key(1, "a", 0), stream_key(1, "b", 0));
  EXPECT_NE(stream_key(1, "a", 0), stream_key(1, "a", 1));
  EXPECT_EQ(poisson_sample(0.0, 5), 0);
  EXPECT_EQ(poisson_sample(-1.0, 5), 0);
}

TEST(Rng, PoissonDispersion) {
  double sum = 0.0, sum2 = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double x = static_cast<double>(poisson_sample(250.0, stream_key(9, "dispersion", i)));
    sum += x;
    sum2 += x * x;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  EXPECT_GE(var / mean, 0.9);
  EXPECT_LE(var / mean, 1.1);
}

TEST(Synth, PoissonizedMeanAtBaseline) {
  CountingModel counting;
  const Interferogram noisy = poissonize(constant_ifg(1.0 / 9.0, 10000, "baseline"), counting);
  double sum = 0.0;
  for (double v : noisy.value) sum += v;
  EXPECT_NEAR(sum / 10000.0, 4000.0, 3.0 * std::sqrt(4000.0 / 10000.0));
  EXPECT_TRUE(noisy.meta.counts);
  EXPECT_NO_THROW(noisy.validate());
  EXPECT_THROW(poissonize(noisy, counting), std::invalid_argument);
}

TEST(Synth, PoissonizeIsDeterministicPerStream) {
  CountingModel counting;
  const auto a = poissonize(constant_ifg(0.1, 32, "x"), counting);
  const auto b = poissonize(constant_ifg(0.1, 32, "x"), counting);
  const auto c = poissonize(constant_ifg(0.1, 32, "y"), counting);
  EXPECT_EQ(a.value, b.value);
  EXPECT_NE(a.value, c.value);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_DOUBLE_EQ(a.sigma[i], std::sqrt(std::max(a.value[i], 1.0)));
}

TEST(Synth, IdealPrepIsFlat) {
  const ExperimentConfig cfg;
  for (int p = 0; p < 3; ++p) {
    const Interferogram ifg = sweep_ideal(Scenario::prep(p), {}, cfg);
    for (double v : ifg.value) EXPECT_NEAR(v, 1.0 / 9.0, 1e-12);
  }
}

TEST(Synth, EmptyLoopsGiveConfiguredContrast) {
  ExperimentConfig cfg = ExperimentConfig::paper_like();
  for (auto l : {EmptyLoop::Front, EmptyLoop::Outer, EmptyLoop::Rear}) {
    const Interferogram ifg = sweep_ideal(Scenario::empty(l), {}, cfg);
    EXPECT_NEAR(fitted_contrast(ifg), cfg.imperfections.contrast(l), 1e-9) << loop_name(l);
    EXPECT_NEAR(fitted_contrast(ifg, std::nullopt), cfg.imperfections.contrast(l), 1e-9) << loop_name(l);
  }
}

TEST(Synth, FullCoherenceReducesToModelIntensity) {
  const ImperfectionModel ideal;
  const Interaction x{InteractionKind::DC, 0, 0.3};
  const CVec state = apply(interaction_operator(x), preselection());
  for (double chi : {0.0, 0.4, 1.7}) {
    const Selection sel{chi, 0.2};
    EXPECT_NEAR(partially_coherent_intensity(state, sel, ideal), detected_intensity(state, sel), 1e-15);
  }
}

TEST(Synth, PrepContrastGrowsWithLeak) {
  ExperimentConfig cfg;
  double last = -1.0;
  for (int k = 0; k <= 8; ++k) {
    cfg.imperfections.prep_leak_angle = kPi / 8.0 * k / 8.0;
    const double c = fitted_contrast(sweep_ideal(Scenario::prep(0), {}, cfg));
    EXPECT_GT(c, last);
    last = c;
  }
}

TEST(Synth, PaperLikePrepContrastIsAFewPercent) {
  const ExperimentConfig cfg = ExperimentConfig::paper_like();
  double sum = 0.0;
  for (int p = 0; p < 3; ++p) {
    const double c = fitted_contrast(sweep_ideal(Scenario::prep(p), {}, cfg));
    EXPECT_GE(c, 0.015);
    EXPECT_LE(c, 0.05);
    sum += c;
  }
  EXPECT_NEAR(sum / 3.0, 0.03, 0.005);
}

TEST(Synth, PreparedStateIsNormalized) {
  ImperfectionModel m;
  m.prep_leak_angle = 0.3;
  EXPECT_NEAR(prepared_state(m, 0.5).norm2(), 1.0, 1e-15);
  EXPECT_LE(max_abs_diff(prepared_state(ImperfectionModel{}, 0.0), preselection()), 1e-16);
}

TEST(Synth, SweepPathMoving) {
  const Selection base{0.1, 0.2};
  const Selection s1 = swept_selection(base, 0, 1.0);
  const Selection s2 = swept_selection(base, 1, 1.0);
  const Selection s3 = swept_selection(base, 2, 1.0);
  EXPECT_DOUBLE_EQ(s1.chi1, 1.1);
  EXPECT_DOUBLE_EQ(s1.chi2, 0.2);
  EXPECT_DOUBLE_EQ(s2.chi1, 1.1);
  EXPECT_DOUBLE_EQ(s2.chi2, 1.2);
  EXPECT_DOUBLE_EQ(s3.chi1, 0.1);
  EXPECT_DOUBLE_EQ(s3.chi2, 1.2);
}

TEST(Synth, ScenarioLabelsRoundTrip) {
  const ExperimentConfig cfg;
  for (const char* label : {"empty:front", "empty:rear", "prep:II", "weak:dc:I", "weak:abs:II",
                            "weak:rf:III@I", "adjust:1.5:1.5:2"}) {
    EXPECT_EQ(parse_scenario(label, cfg).label(), label);
  }
  EXPECT_EQ(parse_scenario("prep", cfg).label(), "prep:I");
  for (const char* bad : {"", "weak:dc", "weak:xx:I", "prep:IV", "empty", "adjust:1:2", "adjust:a:1:1", "noise"}) {
    EXPECT_THROW(parse_scenario(bad, cfg), std::invalid_argument) << bad;
  }
}

TEST(Synth, InterferogramValidation) {
  Interferogram ifg = constant_ifg(1.0, 5, "v");
  EXPECT_NO_THROW(ifg.validate());
  ifg.sigma[2] = 0.0;
  EXPECT_THROW(ifg.validate(), std::invalid_argument);
  ifg = constant_ifg(1.5, 5, "v");
  ifg.meta.counts = true;
  EXPECT_THROW(ifg.validate(), std::invalid_argument);
  ifg = constant_ifg(1.0, 5, "v");
  ifg.value.pop_back();
  EXPECT_THROW(ifg.validate(), std::invalid_argument);
}

TEST(Synth, IdealMeasurementSetPattern) {
  const ExperimentConfig cfg;
  const MeasurementSet set = run_measurement_set(cfg, false);
  for (const auto& cell : set.cells) {
    const bool diagonal = (cell.kind == InteractionKind::DC && cell.path == 0) ||
                          (cell.kind == InteractionKind::RF && cell.path == 2);
    double lo = 1e9, hi = -1e9;
    for (std::size_t i = 0; i < cell.weak.size(); ++i) {
      const double d = cell.weak.value[i] - cell.prep.value[i];
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    if (diagonal) {
      EXPECT_GT(hi - lo, 0.01);
    } else {
      // only a constant O(alpha^2) shift, or nothing at all
      EXPECT_LE(hi - lo, 1e-15);
    }
  }
  for (int p : {0, 2}) EXPECT_EQ(set.cell(InteractionKind::Absorber, p).weak.value,
                                 set.cell(InteractionKind::Absorber, p).prep.value);
}

TEST(Synth, PairPrepMatchesStandalonePrep) {
  const ExperimentConfig cfg = ExperimentConfig::paper_like();
  const MeasurementSet set = run_measurement_set(cfg, false);
  for (const auto& cell : set.cells) {
    EXPECT_EQ(cell.prep.value, sweep_ideal(Scenario::prep(cell.path), {}, cfg).value);
  }
  const MeasurementSet noisy = run_measurement_set(cfg, true);
  EXPECT_EQ(noisy.cells[0].prep.meta.stream, "dc:I/off");
  EXPECT_EQ(noisy.cells[0].weak.meta.stream, "dc:I/on");
  EXPECT_NE(noisy.cells[0].prep.value, noisy.cells[1].prep.value);
}

TEST(Synth, AdjustScenarioMinimumAtFlipCurrent) {
  ExperimentConfig cfg;
  double best = 1e9, best_current = -1.0;
  for (int k = 0; k <= 20; ++k) {
    const double current = 1.0 + 0.05 * k;
    const double c = fitted_contrast(sweep_ideal(Scenario::adjust_scan({current, 1.5, 2.0}), {}, cfg));
    if (c < best) {
      best = c;
      best_current = current;
    }
  }
  EXPECT_NEAR(best_current, 1.5, 1e-12);
  EXPECT_LE(best, 1e-9);
}

TEST(Synth, AdjustmentScanCurve) {
  std::vector<double> currents;
  for (int k = 0; k <= 40; ++k) currents.push_back(1.0 + 0.025 * k);
  const auto curve = adjustment_scan(currents, 1.51, 2.0, 0.03, 0.57);
  const auto it = std::min_element(curve.begin(), curve.end(),
                                   [](const auto& a, const auto& b) { return a.second < b.second; });
  EXPECT_NEAR(it->first, 1.5, 0.025);
  EXPECT_NEAR(it->second, 0.03, 1e-12);
  EXPECT_NEAR(curve.front().second, 0.57 * std::abs(std::sin(2.0 * (1.0 - 1.51))), 1e-15);
  EXPECT_THROW(adjustment_scan(std::vector<double>{}, 1.5, 2.0, 0.03, 0.57), std::invalid_argument);
}
