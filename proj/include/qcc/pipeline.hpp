#pragma once

// Simulate -> fit -> extract -> assemble for the full 3x3 measurement.

#include <array>
#include <optional>
#include <vector>

#include "qcc/config.hpp"
#include "qcc/extract.hpp"
#include "qcc/fit.hpp"
#include "qcc/synth.hpp"

namespace qcc {

struct LoopAnalysis {
  EmptyLoop loop = EmptyLoop::Front;
  FitResult fit;
  Measured contrast;
};

struct CellAnalysis {
  InteractionKind kind = InteractionKind::DC;
  int path = 0;
  FitResult prep;
  FitResult weak;
  Measured prep_contrast;
  std::optional<SignalDecomposition> signal;  ///< rotations only
  ExtractionResult weak_value;
};

struct PipelineResult {
  std::array<LoopAnalysis, 3> empty;
  std::array<CellAnalysis, 9> cells;  ///< row-major over kRowKinds x paths
  std::vector<MeanIntensityRow> mean_intensity;
  WvMatrix matrix;

  const CellAnalysis& cell(InteractionKind kind, int path) const;
};

/// Empty loops are fitted with free omega; every cell is then fitted at the
/// omega of the loop that normalizes its swept path.
PipelineResult analyse(const MeasurementSet& set, const ExperimentConfig& cfg);

PipelineResult run_pipeline(const ExperimentConfig& cfg, bool noise);

}  // namespace qcc
