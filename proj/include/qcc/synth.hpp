#pragma once

// Interferogram synthesis: phase-shifter sweeps through a scenario, with the
// imperfection model applied to exact expectations, and optional Poisson
// counting on top.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qcc/config.hpp"
#include "qcc/model.hpp"

namespace qcc {

enum class ScenarioKind { Empty, Prep, Weak, AdjustScan };

struct AdjustSetting {
  double current = 0.0;  ///< A
  double i_flip = 0.0;   ///< A
  double k = 1.0;        ///< rad / A
};

struct Scenario {
  ScenarioKind kind = ScenarioKind::Prep;
  EmptyLoop loop = EmptyLoop::Front;  ///< Empty only
  Interaction interaction;            ///< Weak only; strength is the nominal value
  int sweep_path = 0;                 ///< ignored for Empty (set by the loop)
  AdjustSetting adjust;               ///< AdjustScan only

  static Scenario empty(EmptyLoop loop);
  static Scenario prep(int sweep_path);
  static Scenario weak(Interaction x, int sweep_path);
  static Scenario adjust_scan(AdjustSetting setting);

  /// Path whose phase the sweep actually moves.
  int swept_path() const;

  /// Stable label, e.g. "empty:front", "prep:II", "weak:dc:I", "weak:rf:III@II".
  /// The "@path" suffix appears only when the sweep path differs from the
  /// interaction path.
  std::string label() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Parses labels produced by Scenario::label(). Weak interactions take their
/// strength from `cfg`. Throws std::invalid_argument.
Scenario parse_scenario(std::string_view label, const ExperimentConfig& cfg);

struct InterferogramMeta {
  std::string scenario;     ///< Scenario::label()
  std::string stream;       ///< noise stream id; defaults to the label
  std::uint64_t seed = 0;
  std::string config_hash;
  bool counts = false;      ///< values are sampled counts rather than intensities

  friend bool operator==(const InterferogramMeta&, const InterferogramMeta&) = default;
};

struct Interferogram {
  std::vector<double> chi;
  std::vector<double> value;
  std::vector<double> sigma;
  InterferogramMeta meta;

  std::size_t size() const { return chi.size(); }
  /// Equal lengths, positive finite sigmas, non-negative integral counts.
  void validate() const;

  friend bool operator==(const Interferogram&, const Interferogram&) = default;
};

/// Selection reached when the phase of `path` is moved by `chi` relative to
/// the reference. Moving path II moves both shifters together.
Selection swept_selection(const Selection& base, int path, double chi);

/// State right after the preparation stage (imperfect flips included).
CVec prepared_state(const ImperfectionModel& model, double rf_flip_deficit);

/// Detected intensity with every inter-path cross term scaled by the loop
/// coherence; reduces to detected_intensity() when all coherences are 1.
double partially_coherent_intensity(const CVec& state, const Selection& sel,
                                    const ImperfectionModel& model);

/// Expected intensity of one scenario at one postselection.
double scenario_intensity(const Scenario& scenario, const Selection& sel,
                          const ExperimentConfig& cfg);

/// Exact expected intensities over cfg.chi_grid(). Sigmas are the Poisson
/// standard deviations the counting model would give, in intensity units.
Interferogram sweep_ideal(const Scenario& scenario, const Selection& base,
                          const ExperimentConfig& cfg);

/// counts_i ~ Poisson(intensity_i * 9 * baseline), keyed by
/// (seed, ifg.meta.stream, i); sigma_i = sqrt(max(counts_i, 1)).
Interferogram poissonize(const Interferogram& ifg, const CountingModel& counting);

/// Contrast vs flipper current: max(floor, c_max |sin(k (I - i_flip))|).
std::vector<std::pair<double, double>> adjustment_scan(std::span<const double> currents,
                                                       double i_flip, double k, double floor,
                                                       double c_max);

// ---------------------------------------------------------------------------

/// Weak interactions in row order: DC, absorber, RF.
inline constexpr std::array<InteractionKind, 3> kRowKinds{
    InteractionKind::DC, InteractionKind::Absorber, InteractionKind::RF};

struct MeasurementPair {
  InteractionKind kind = InteractionKind::DC;
  int path = 0;
  Interferogram prep;  ///< "off"
  Interferogram weak;  ///< "on"
};

struct MeasurementSet {
  /// Row-major over kRowKinds x paths I..III; each cell is swept in its own path.
  std::array<MeasurementPair, 9> cells;
  /// Empty interferometer per loop, indexed by EmptyLoop.
  std::array<Interferogram, 3> empty;

  const MeasurementPair& cell(InteractionKind kind, int path) const;
};

/// The nine on/off pairs plus the three empty-loop interferograms. With
/// `noise` the values are Poisson counts, otherwise expected intensities.
MeasurementSet run_measurement_set(const ExperimentConfig& cfg, bool noise);

/// Weak interaction for a matrix cell with strengths taken from the config.
Interaction cell_interaction(InteractionKind kind, int path, const ExperimentConfig& cfg);

}  // namespace qcc
