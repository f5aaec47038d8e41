#pragma once

// Weighted sinusoid fits I(chi) = i0 + b sin(omega chi + phi).

#include <array>
#include <optional>
#include <utility>

#include "qcc/synth.hpp"

namespace qcc {

/// Parameter order in FitResult::cov.
enum FitParam { kI0 = 0, kB = 1, kOmega = 2, kPhi = 3 };

struct FitResult {
  double i0 = 0.0;
  double b = 0.0;      ///< >= 0
  double omega = 0.0;
  double phi = 0.0;    ///< in [-pi, pi)
  /// Covariance of (i0, b, omega, phi). The omega row and column are zero
  /// when omega was held fixed.
  std::array<std::array<double, 4>, 4> cov{};
  double chi2_red = 0.0;
  bool omega_fixed = true;
  int iterations = 0;

  double err(FitParam p) const;
  /// The model evaluated at chi.
  double operator()(double chi) const;
};

struct FitOptions {
  std::optional<double> fixed_omega;
  /// Centre of the omega search window [0.5, 1.5] * nominal for free fits.
  double nominal_omega = 2.0;
  int omega_grid_points = 401;
  int max_iterations = 200;
};

/// Throws std::invalid_argument for unusable data (too few points, bad
/// sigmas, all chi equal) and ConvergenceError when the solver fails or the
/// parameters are not identifiable.
FitResult fit_sinusoid(const Interferogram& ifg, const FitOptions& opts = {});

/// (b / i0, first-order error). Throws std::invalid_argument for i0 <= 0.
std::pair<double, double> contrast(const FitResult& fit);

/// Wraps an angle into [-pi, pi).
double canonical_phase(double phi);

}  // namespace qcc
