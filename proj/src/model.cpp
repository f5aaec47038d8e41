#include "qcc/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qcc {

namespace {

void check_path(int path) {
  if (path < 0 || path >= kNumPaths) {
    throw std::invalid_argument("path index " + std::to_string(path) + " outside I..III");
  }
}

CMat path_factor_projector(int path) { return CMat::projector(kNumPaths, static_cast<std::size_t>(path)); }

const CMat& identity2() {
  static const CMat id = CMat::identity(2);
  return id;
}

}  // namespace

std::size_t basis_index(int path, Spin spin, Energy energy) {
  check_path(path);
  return (static_cast<std::size_t>(path) * 2 + static_cast<std::size_t>(spin)) * 2 +
         static_cast<std::size_t>(energy);
}

std::string path_name(int path) {
  check_path(path);
  static const char* names[] = {"I", "II", "III"};
  return names[path];
}

int parse_path(std::string_view name) {
  for (int p = 0; p < kNumPaths; ++p) {
    if (name == path_name(p)) return p;
  }
  throw std::invalid_argument("unknown path '" + std::string(name) + "'");
}

std::string kind_name(InteractionKind kind) {
  switch (kind) {
    case InteractionKind::DC: return "dc";
    case InteractionKind::RF: return "rf";
    case InteractionKind::Absorber: return "abs";
  }
  return "?";
}

InteractionKind parse_kind(std::string_view name) {
  if (name == "dc") return InteractionKind::DC;
  if (name == "rf") return InteractionKind::RF;
  if (name == "abs") return InteractionKind::Absorber;
  throw std::invalid_argument("unknown interaction kind '" + std::string(name) + "'");
}

void Interaction::validate() const {
  check_path(path);
  if (kind == InteractionKind::Absorber) {
    if (!(strength >= 0.0 && strength <= 1.0)) {
      throw std::invalid_argument("absorption coefficient must lie in [0, 1]");
    }
  } else if (!(strength >= 0.0 && strength < 2.0 * std::numbers::pi)) {
    throw std::invalid_argument("rotation angle must lie in [0, 2pi)");
  }
}

// ---------------------------------------------------------------------------

CVec preselection() {
  const double a = 1.0 / std::sqrt(3.0);
  CVec v(kModelDim);
  v[basis_index(0, Spin::Down, Energy::E0)] = a;
  v[basis_index(1, Spin::Up, Energy::E0)] = a;
  v[basis_index(2, Spin::Down, Energy::EPrime)] = a;
  return v;
}

double postselection_phase(const Selection& sel, int path) {
  check_path(path);
  switch (path) {
    case 0: return sel.chi2 - sel.chi1;
    case 1: return sel.chi1 + sel.chi2;
    default: return sel.chi1 - sel.chi2;
  }
}

CVec postselection(const Selection& sel, EnergySelect energy) {
  const double a = 1.0 / std::sqrt(3.0);
  if (energy == EnergySelect::None) {
    CVec v(2 * kNumPaths);
    for (int p = 0; p < kNumPaths; ++p) {
      v[static_cast<std::size_t>(p) * 2] = std::polar(a, postselection_phase(sel, p));
    }
    return v;
  }
  const Energy e = energy == EnergySelect::E0 ? Energy::E0 : Energy::EPrime;
  CVec v(kModelDim);
  for (int p = 0; p < kNumPaths; ++p) {
    v[basis_index(p, Spin::Up, e)] = std::polar(a, postselection_phase(sel, p));
  }
  return v;
}

CMat path_projector(int path) {
  check_path(path);
  return tensor(path_factor_projector(path), CMat::identity(4));
}

CMat spin_flip() {
  static const CMat m = tensor(CMat::identity(kNumPaths), tensor(CMat::pauli_x(), identity2()));
  return m;
}

CMat energy_flip() {
  static const CMat m =
      tensor(CMat::identity(kNumPaths), tensor(CMat::pauli_x(), CMat::pauli_x()));
  return m;
}

CMat local_generator(InteractionKind kind, int path) {
  const CMat proj = path_projector(path);
  switch (kind) {
    case InteractionKind::DC: return matmul(spin_flip(), proj);
    case InteractionKind::RF: return matmul(energy_flip(), proj);
    case InteractionKind::Absorber: return proj;
  }
  return proj;
}

CMat interaction_operator(const Interaction& x) {
  x.validate();
  const CMat proj = path_projector(x.path);
  CMat op = CMat::identity(kModelDim);
  if (x.kind == InteractionKind::Absorber) {
    op -= (1.0 - std::sqrt(1.0 - x.strength)) * proj;
    return op;
  }
  const double half = 0.5 * x.strength;
  op -= (1.0 - std::cos(half)) * proj;
  op -= Complex(0.0, std::sin(half)) * local_generator(x.kind, x.path);
  return op;
}

// ---------------------------------------------------------------------------

double detected_intensity(const CVec& state, const Selection& sel) {
  return std::norm(inner(postselection(sel, EnergySelect::E0), state)) +
         std::norm(inner(postselection(sel, EnergySelect::EPrime), state));
}

double detected_intensity(const std::optional<Interaction>& x, const Selection& sel) {
  const CVec initial = preselection();
  if (!x) return detected_intensity(initial, sel);
  return detected_intensity(apply(interaction_operator(*x), initial), sel);
}

double intensity_perturbative(const Interaction& x, const Selection& sel) {
  x.validate();
  const double d_I = x.path == 0 ? 1.0 : 0.0;
  const double d_II = x.path == 1 ? 1.0 : 0.0;
  const double d_III = x.path == 2 ? 1.0 : 0.0;
  const double a = x.strength;
  double bracket = 1.0;
  switch (x.kind) {
    case InteractionKind::DC:
      bracket = 1.0 + a * d_I * std::sin(2.0 * sel.chi1) + a * a / 4.0 * (d_I - d_II + d_III);
      break;
    case InteractionKind::RF:
      bracket = 1.0 + a * d_III * std::sin(2.0 * sel.chi2) + a * a / 4.0 * (d_I - d_II + d_III);
      break;
    case InteractionKind::Absorber:
      bracket = 1.0 - a * d_II;
      break;
  }
  return bracket / 9.0;
}

// ---------------------------------------------------------------------------

std::string operator_name(WeakOperator op) {
  switch (op) {
    case WeakOperator::SpinX: return "spin_x";
    case WeakOperator::Path: return "path";
    case WeakOperator::EnergyX: return "energy_x";
  }
  return "?";
}

CMat weak_operator_matrix(WeakOperator op, int path) {
  switch (op) {
    case WeakOperator::SpinX: return local_generator(InteractionKind::DC, path);
    case WeakOperator::EnergyX: return local_generator(InteractionKind::RF, path);
    case WeakOperator::Path: return path_projector(path);
  }
  return path_projector(path);
}

Complex weak_value(const CVec& final_state, const CMat& op, const CVec& initial_state) {
  const Complex overlap = inner(final_state, initial_state);
  if (std::abs(overlap) < 1e-14) {
    throw VanishingOverlapError("weak value undefined: |<f|i>| below 1e-14");
  }
  return matrix_element(final_state, op, initial_state) / overlap;
}

WeakValue weak_value(WeakOperator op, int path, const Selection& sel) {
  WeakValue wv;
  wv.value = weak_value(postselection(sel, EnergySelect::E0), weak_operator_matrix(op, path),
                        preselection());
  wv.op = op;
  wv.path = path;
  wv.energy_selected = true;
  return wv;
}

// ---------------------------------------------------------------------------

SumRule completeness_check(std::span<const CVec> basis, int path) {
  check_path(path);
  if (basis.size() != kModelDim) {
    throw BasisError("final basis must hold " + std::to_string(kModelDim) + " vectors");
  }
  for (std::size_t a = 0; a < basis.size(); ++a) {
    if (basis[a].dim() != kModelDim) throw BasisError("final basis vector has wrong dimension");
    for (std::size_t b = a; b < basis.size(); ++b) {
      const Complex g = inner(basis[a], basis[b]);
      const double expected = a == b ? 1.0 : 0.0;
      if (std::abs(g - expected) > 1e-10) throw BasisError("final basis is not orthonormal");
    }
  }
  // n orthonormal vectors in an n-dim space are complete.

  const CVec initial = preselection();
  const CMat proj = path_projector(path);
  const CVec projected = apply(proj, initial);

  SumRule out;
  out.lhs = inner(initial, projected).real();
  // p_m <Pi_j>_w^m = <i|f_m><f_m|Pi_j|i>; the product form stays defined
  // for final states orthogonal to |i>.
  Complex rhs{};
  for (const auto& f : basis) rhs += std::conj(inner(f, initial)) * inner(f, projected);
  out.rhs = rhs.real();
  return out;
}

double spin_x_expectation(int path) {
  const CVec initial = preselection();
  return matrix_element(initial, local_generator(InteractionKind::DC, path), initial).real();
}

}  // namespace qcc
