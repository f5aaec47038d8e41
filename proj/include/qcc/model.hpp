#pragma once

// Three-path interferometer model: pre/postselected states, local weak
// interactions, energy-traced detection and weak values.
//
// Basis ordering for the 12-dimensional space is
//   index = ((path * 2) + spin) * 2 + energy
// with path 0..2 = I..III, spin 0 = up, 1 = down, energy 0 = E0, 1 = E'.

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "qcc/hilbert.hpp"

namespace qcc {

inline constexpr int kNumPaths = 3;
inline constexpr std::size_t kModelDim = 12;

enum class Spin { Up = 0, Down = 1 };
enum class Energy { E0 = 0, EPrime = 1 };

std::size_t basis_index(int path, Spin spin, Energy energy);

/// "I", "II", "III" for path 0, 1, 2.
std::string path_name(int path);
/// Inverse of path_name; throws std::invalid_argument on anything else.
int parse_path(std::string_view name);

/// Phase-shifter settings of the postselection.
struct Selection {
  double chi1 = 0.0;
  double chi2 = 0.0;
};

enum class InteractionKind { DC, RF, Absorber };

std::string kind_name(InteractionKind kind);
InteractionKind parse_kind(std::string_view name);

/// One local manipulation between pre- and postselection.
/// `strength` is the rotation angle in radians for DC/RF, or the absorption
/// coefficient in [0, 1] for the absorber.
struct Interaction {
  InteractionKind kind = InteractionKind::DC;
  int path = 0;
  double strength = 0.0;

  /// Throws std::invalid_argument when the path or strength is out of range.
  void validate() const;
};

enum class EnergySelect { E0, EPrime, None };

// ---------------------------------------------------------------------------
// States

/// (|I,dn,E0> + |II,up,E0> + |III,dn,E'>) / sqrt(3)
CVec preselection();

/// Spin-up postselected state with path phases exp(i(chi2-chi1)),
/// exp(i(chi1+chi2)), exp(i(chi1-chi2)) on I, II, III. With an energy
/// selection the result lives in the 12-dim space; with EnergySelect::None it
/// is the 6-dim path (x) spin factor.
CVec postselection(const Selection& sel, EnergySelect energy);

/// Per-path postselection phase, i.e. the argument of the path-j amplitude.
double postselection_phase(const Selection& sel, int path);

// ---------------------------------------------------------------------------
// Operators on the 12-dim space

CMat path_projector(int path);
CMat spin_flip();    ///< sigma_x on spin, identity on energy
CMat energy_flip();  ///< sigma_x on spin (x) sigma_x on energy

/// sigma^kind_x Pi_j for a rotation kind, Pi_j for the absorber.
CMat local_generator(InteractionKind kind, int path);

/// Closed-form operator of a validated interaction.
CMat interaction_operator(const Interaction& x);

// ---------------------------------------------------------------------------
// Intensities

/// Time-integrated, spin-up detection: |<f0|psi>|^2 + |<f'|psi>|^2.
double detected_intensity(const CVec& state, const Selection& sel);

/// Detected intensity after an optional interaction acting on |i>.
double detected_intensity(const std::optional<Interaction>& x, const Selection& sel);

/// Second-order small-strength formulas, scaled by 1/9.
double intensity_perturbative(const Interaction& x, const Selection& sel);

// ---------------------------------------------------------------------------
// Weak values

enum class WeakOperator { SpinX, Path, EnergyX };

std::string operator_name(WeakOperator op);

struct WeakValue {
  Complex value;
  WeakOperator op = WeakOperator::Path;
  int path = 0;
  bool energy_selected = true;
};

/// The observable whose weak value a given operator tag denotes.
CMat weak_operator_matrix(WeakOperator op, int path);

class VanishingOverlapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// <f0|O|i> / <f0|i>, evaluated numerically from the state vectors.
WeakValue weak_value(WeakOperator op, int path, const Selection& sel);

/// Generic weak value for arbitrary states.
Complex weak_value(const CVec& final_state, const CMat& op, const CVec& initial_state);

// ---------------------------------------------------------------------------
// Sum rule over a complete set of final states

struct SumRule {
  double lhs = 0.0;  ///< <i|Pi_j|i>
  double rhs = 0.0;  ///< sum_m p_m <Pi_j>_w^m
};

class BasisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Checks orthonormality and completeness of `basis` to 1e-10 first.
SumRule completeness_check(std::span<const CVec> basis, int path);

/// <i| sigma^DC_x Pi_j |i>
double spin_x_expectation(int path);

}  // namespace qcc
