#include "qcc/pipeline.hpp"

#include <stdexcept>

namespace qcc {

const CellAnalysis& PipelineResult::cell(InteractionKind kind, int path) const {
  for (const auto& c : cells) {
    if (c.kind == kind && c.path == path) return c;
  }
  throw std::out_of_range("no such cell");
}

PipelineResult analyse(const MeasurementSet& set, const ExperimentConfig& cfg) {
  cfg.validate();
  PipelineResult out;

  FitOptions free;
  free.nominal_omega = cfg.nominal_omega;
  for (int l = 0; l < 3; ++l) {
    LoopAnalysis& la = out.empty[static_cast<std::size_t>(l)];
    la.loop = static_cast<EmptyLoop>(l);
    la.fit = fit_sinusoid(set.empty[static_cast<std::size_t>(l)], free);
    const auto [c, dc] = contrast(la.fit);
    la.contrast = {c, dc};
  }

  std::vector<CellFits> fits;
  std::vector<ExtractionResult> wvs;
  for (std::size_t n = 0; n < set.cells.size(); ++n) {
    const MeasurementPair& pair = set.cells[n];
    const LoopAnalysis& loop =
        out.empty[static_cast<std::size_t>(cfg.contrast_loop_for_path[static_cast<std::size_t>(pair.path)])];
    FitOptions fixed;
    fixed.fixed_omega = loop.fit.omega;

    CellAnalysis& ca = out.cells[n];
    ca.kind = pair.kind;
    ca.path = pair.path;
    ca.prep = fit_sinusoid(pair.prep, fixed);
    ca.weak = fit_sinusoid(pair.weak, fixed);
    const auto [pc, dpc] = contrast(ca.prep);
    ca.prep_contrast = {pc, dpc};

    const Measured i0_prep{ca.prep.i0, ca.prep.err(kI0)};
    if (pair.kind == InteractionKind::Absorber) {
      ca.weak_value = extract_absorber_wv({ca.weak.i0, ca.weak.err(kI0)}, i0_prep,
                                          {cfg.absorption, cfg.absorption_err}, pair.path);
    } else {
      ca.signal = decompose_signal(ca.weak, ca.prep);
      ca.weak_value = extract_rotation_wv(*ca.signal, i0_prep, loop.contrast,
                                          {cfg.alpha_rot, cfg.alpha_rot_err},
                                          operator_for(pair.kind), pair.path);
    }
    fits.push_back({pair.kind, pair.path, ca.weak, ca.prep});
    wvs.push_back(ca.weak_value);
  }
  out.mean_intensity = mean_intensity_analysis(fits, cfg.alpha_rot, cfg.absorption);
  out.matrix = assemble_wv_matrix(wvs);
  return out;
}

PipelineResult run_pipeline(const ExperimentConfig& cfg, bool noise) {
  return analyse(run_measurement_set(cfg, noise), cfg);
}

}  // namespace qcc
