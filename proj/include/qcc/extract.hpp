#pragma once

// Weak-value extraction from fitted on/off interferogram pairs.

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "qcc/fit.hpp"
#include "qcc/model.hpp"

namespace qcc {

/// A value with its one-standard-deviation error.
struct Measured {
  double value = 0.0;
  double error = 0.0;
};

struct SignalDecomposition {
  double b_signal = 0.0;
  double db_signal = 0.0;
  double phi_signal = 0.0;  ///< phase of the difference phasor, [-pi, pi)
  bool fallback = false;    ///< b_signal was at the singular point
};

/// Operator probed by each interaction kind.
WeakOperator operator_for(InteractionKind kind);
InteractionKind kind_for(WeakOperator op);

struct ExtractionResult {
  double magnitude = 0.0;  ///< |weak value| for rotations, signed value for the absorber
  double error = 0.0;
  WeakOperator op = WeakOperator::Path;
  int path = 0;
  /// Phase of the signal oscillation, reported for rotations only.
  std::optional<double> phase;
};

/// Splits the weak fit into the preparation oscillation plus a signal
/// oscillation. Both fits must share omega (relative 1e-9).
SignalDecomposition decompose_signal(const FitResult& weak, const FitResult& prep);

/// |weak value| = (b_signal / i0_prep) / (c_empty alpha), first order in alpha.
ExtractionResult extract_rotation_wv(const SignalDecomposition& dec, Measured i0_prep,
                                     Measured c_empty, Measured alpha, WeakOperator op, int path);

/// (1 - i0_weak / i0_prep) / a
ExtractionResult extract_absorber_wv(Measured i0_weak, Measured i0_prep, Measured a, int path = 1);

/// Fits of one (interaction, path) cell.
struct CellFits {
  InteractionKind kind = InteractionKind::DC;
  int path = 0;
  FitResult weak;
  FitResult prep;
};

struct MeanIntensityRow {
  InteractionKind kind = InteractionKind::DC;
  int path = 0;
  Measured ratio;         ///< i0_weak / i0_prep
  double expected = 1.0;  ///< 1 + alpha^2/4 (I, III), 1 - alpha^2/4 (II), 1 - A or 1 (absorber)
  bool consistent = false;
};

/// One row per matrix cell, in row-major order over kRowKinds x paths.
/// A cell is consistent when |ratio - expected| <= 3 error + slack. Throws
/// std::invalid_argument unless every cell appears exactly once.
std::vector<MeanIntensityRow> mean_intensity_analysis(std::span<const CellFits> cells, double alpha,
                                                      double absorption, double slack = 0.006);

struct WvMatrix {
  /// Rows DC, absorber, RF; columns paths I..III.
  std::array<std::array<Measured, 3>, 3> cell{};
  std::array<Measured, 3> row_sum{};
  std::array<Measured, 3> col_sum{};
  /// |value - identity| <= 3 error, per cell.
  std::array<std::array<bool, 3>, 3> matches_identity{};
};

/// Sums add errors in quadrature. Throws std::invalid_argument unless every
/// (operator, path) appears exactly once.
WvMatrix assemble_wv_matrix(std::span<const ExtractionResult> results);

}  // namespace qcc
