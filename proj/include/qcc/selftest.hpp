#pragma once

// Built-in oracle suites run by `qcc selftest`.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qcc/hilbert.hpp"
#include "qcc/model.hpp"

namespace qcc {

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct SelftestOptions {
  /// Test hook: perturb the object under test in the named suite so that it
  /// must fail.
  std::optional<std::string> corrupt;
  std::uint64_t seed = 7;
};

/// Suite names in run order: expm, pan, completeness, perturbative.
std::vector<std::string> selftest_suites();

/// Throws std::invalid_argument if `corrupt` names no suite.
std::vector<SuiteResult> run_selftest(const SelftestOptions& opts = {});

/// Orthonormal 12-vector basis whose first two members are the spin-up
/// postselected states with energy E0 and E'.
std::vector<CVec> final_state_basis(const Selection& sel);

/// Max over rotation cells (DC and RF in every path) and `n_chi` settings of
/// the swept phase of |exact - second-order| intensity.
double perturbative_max_error(double alpha, int n_chi = 64);

}  // namespace qcc
