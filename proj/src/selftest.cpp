#include "qcc/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

#include "qcc/pan.hpp"
#include "qcc/synth.hpp"

namespace qcc {

namespace {

constexpr double kPi = std::numbers::pi;

using Clock = std::chrono::steady_clock;

SuiteResult suite_expm(std::mt19937_64& rng, bool corrupt) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  std::uniform_int_distribution<int> pick_path(0, 2);
  std::bernoulli_distribution pick_kind(0.5);
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    const Interaction x{pick_kind(rng) ? InteractionKind::DC : InteractionKind::RF, pick_path(rng),
                        angle(rng)};
    CMat closed = interaction_operator(x);
    if (corrupt && n == 0) closed(0, 0) += 1e-3;
    const CMat oracle = expm(Complex(0.0, -0.5 * x.strength) * local_generator(x.kind, x.path));
    worst = std::max(worst, max_abs_diff(closed, oracle));
  }
  return {"expm", worst <= 1e-10, fmt::format("max |closed - expm| = {:.3e} over 100 cases", worst)};
}

SuiteResult suite_pan(std::mt19937_64& rng, bool corrupt) {
  std::uniform_real_distribution<double> phase(-kPi, kPi);
  double worst = 0.0;
  int cases = 0;
  for (int n = 2; n <= 5; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> phases(static_cast<std::size_t>(n));
      for (double& p : phases) p = phase(rng);
      for (double alpha : {0.05, kPi / 9.0, 1.0}) {
        for (int p = 1; p <= n - 1; ++p) {
          for (int j = 1; j <= n; ++j) {
            double propagated = pan::intensity(n, p, j, alpha, phases);
            if (corrupt && cases == 0) propagated += 1e-3;
            worst = std::max(worst, std::abs(propagated - pan::intensity_closed(n, p, j, alpha, phases)));
            ++cases;
          }
        }
      }
    }
  }
  return {"pan", worst <= 1e-12, fmt::format("max |propagated - closed| = {:.3e} over {} cases", worst, cases)};
}

SuiteResult suite_completeness(std::mt19937_64& rng, bool corrupt) {
  std::uniform_real_distribution<double> phase(-kPi, kPi);
  double worst = 0.0;
  double worst_spin = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<CVec> basis = final_state_basis({phase(rng), phase(rng)});
    if (corrupt && trial == 0) basis[0] *= Complex(1.0 + 1e-3, 0.0);
    for (int j = 0; j < kNumPaths; ++j) {
      const SumRule s = completeness_check(basis, j);
      worst = std::max({worst, std::abs(s.rhs - 1.0 / 3.0), std::abs(s.lhs - 1.0 / 3.0)});
    }
  }
  for (int j = 0; j < kNumPaths; ++j) worst_spin = std::max(worst_spin, std::abs(spin_x_expectation(j)));
  const bool ok = worst <= 1e-12 && worst_spin <= 1e-12;
  return {"completeness", ok,
          fmt::format("max |sum rule - 1/3| = {:.3e}, max |<spin x>| = {:.3e}", worst, worst_spin)};
}

SuiteResult suite_perturbative(bool corrupt) {
  const double alphas[] = {0.4, 0.2, 0.1, 0.05};
  double err[4];
  for (int k = 0; k < 4; ++k) err[k] = perturbative_max_error(alphas[k]);
  if (corrupt) err[3] *= 2.0;
  bool ok = true;
  std::string ratios;
  for (int k = 0; k < 3; ++k) {
    const double r = err[k] / err[k + 1];
    ok = ok && r >= 6.5 && r <= 9.5;
    ratios += fmt::format("{}{:.3f}", k ? ", " : "", r);
  }
  return {"perturbative", ok, "successive error ratios " + ratios + " (expected near 8)"};
}

}  // namespace

std::vector<std::string> selftest_suites() { return {"expm", "pan", "completeness", "perturbative"}; }

std::vector<SuiteResult> run_selftest(const SelftestOptions& opts) {
  const auto names = selftest_suites();
  if (opts.corrupt && std::find(names.begin(), names.end(), *opts.corrupt) == names.end()) {
    throw std::invalid_argument("no selftest suite named '" + *opts.corrupt + "'");
  }
  std::mt19937_64 rng(opts.seed);
  std::vector<SuiteResult> out;
  for (const std::string& name : names) {
    const bool corrupt = opts.corrupt && *opts.corrupt == name;
    const auto t0 = Clock::now();
    SuiteResult r;
    try {
      if (name == "expm") r = suite_expm(rng, corrupt);
      else if (name == "pan") r = suite_pan(rng, corrupt);
      else if (name == "completeness") r = suite_completeness(rng, corrupt);
      else r = suite_perturbative(corrupt);
    } catch (const std::exception& e) {
      r = {name, false, std::string("threw: ") + e.what()};
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<CVec> final_state_basis(const Selection& sel) {
  std::vector<CVec> basis;
  const double amp = 1.0 / std::sqrt(3.0);
  // path factor: postselection phases times the three discrete Fourier modes
  for (int m = 0; m < kNumPaths; ++m) {
    for (Spin spin : {Spin::Up, Spin::Down}) {
      for (Energy e : {Energy::E0, Energy::EPrime}) {
        CVec v(kModelDim);
        for (int k = 0; k < kNumPaths; ++k) {
          v[basis_index(k, spin, e)] =
              std::polar(amp, postselection_phase(sel, k) + 2.0 * kPi * m * k / kNumPaths);
        }
        basis.push_back(std::move(v));
      }
    }
  }
  return basis;
}

double perturbative_max_error(double alpha, int n_chi) {
  if (n_chi < 1) throw std::invalid_argument("need at least one phase setting");
  double worst = 0.0;
  for (InteractionKind kind : {InteractionKind::DC, InteractionKind::RF}) {
    for (int path = 0; path < kNumPaths; ++path) {
      const Interaction x{kind, path, alpha};
      for (int i = 0; i < n_chi; ++i) {
        const double chi = 2.0 * kPi * i / n_chi;
        const Selection sel = swept_selection({}, path, chi);
        worst = std::max(worst, std::abs(detected_intensity(std::optional<Interaction>(x), sel) -
                                         intensity_perturbative(x, sel)));
      }
    }
  }
  return worst;
}

}  // namespace qcc
