#include "qcc/extract.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qcc/synth.hpp"

namespace qcc {

namespace {

int row_of(InteractionKind kind) {
  for (int r = 0; r < 3; ++r) {
    if (kRowKinds[static_cast<std::size_t>(r)] == kind) return r;
  }
  throw std::invalid_argument("unknown interaction kind");
}

void check_cell_path(int path) {
  if (path < 0 || path >= kNumPaths) throw std::invalid_argument("path outside I..III");
}

double sq(double x) { return x * x; }

}  // namespace

WeakOperator operator_for(InteractionKind kind) {
  switch (kind) {
    case InteractionKind::DC: return WeakOperator::SpinX;
    case InteractionKind::RF: return WeakOperator::EnergyX;
    case InteractionKind::Absorber: return WeakOperator::Path;
  }
  throw std::invalid_argument("unknown interaction kind");
}

InteractionKind kind_for(WeakOperator op) {
  switch (op) {
    case WeakOperator::SpinX: return InteractionKind::DC;
    case WeakOperator::EnergyX: return InteractionKind::RF;
    case WeakOperator::Path: return InteractionKind::Absorber;
  }
  throw std::invalid_argument("unknown weak operator");
}

SignalDecomposition decompose_signal(const FitResult& weak, const FitResult& prep) {
  if (std::abs(weak.omega - prep.omega) > 1e-9 * std::max(std::abs(prep.omega), 1.0)) {
    throw std::invalid_argument("weak and preparation fits must share omega");
  }
  const double bw = weak.b;
  const double bp = prep.b;
  const double dbw = weak.err(kB);
  const double dbp = prep.err(kB);
  const double dphi = weak.phi - prep.phi;
  const double cos_d = std::cos(dphi);

  SignalDecomposition out;
  out.b_signal = std::sqrt(std::max(sq(bw) + sq(bp) - 2.0 * bw * bp * cos_d, 0.0));
  out.phi_signal = canonical_phase(std::arg(std::polar(bw, weak.phi) - std::polar(bp, prep.phi)));

  const double floor_err = std::max(dbw, dbp);
  if (out.b_signal == 0.0 || out.b_signal <= 1e-12 * floor_err) {
    out.b_signal = 0.0;
    out.db_signal = floor_err;
    out.fallback = true;
    return out;
  }
  const double radicand = sq((bw - bp * cos_d) * dbw) + sq((bp - bw * cos_d) * dbp) +
                          sq(bw * bp * std::sin(dphi)) * (sq(weak.err(kPhi)) + sq(prep.err(kPhi)));
  out.db_signal = std::sqrt(radicand) / out.b_signal;
  return out;
}

ExtractionResult extract_rotation_wv(const SignalDecomposition& dec, Measured i0_prep,
                                     Measured c_empty, Measured alpha, WeakOperator op, int path) {
  check_cell_path(path);
  if (op == WeakOperator::Path) throw std::invalid_argument("rotation extraction needs a spin or energy operator");
  if (!(c_empty.value > 0.0)) throw std::invalid_argument("empty contrast must be positive");
  if (!(alpha.value > 0.0)) throw std::invalid_argument("rotation angle must be positive");
  if (!(i0_prep.value > 0.0)) throw std::invalid_argument("preparation mean intensity must be positive");

  const double denom = i0_prep.value * c_empty.value * alpha.value;
  const double rel2 = sq(i0_prep.error / i0_prep.value) + sq(c_empty.error / c_empty.value) +
                      sq(alpha.error / alpha.value);
  ExtractionResult out;
  out.magnitude = dec.b_signal / denom;
  // b * sqrt((db/b)^2 + rel2), kept finite at b = 0
  out.error = std::sqrt(sq(dec.db_signal) + sq(dec.b_signal) * rel2) / denom;
  out.op = op;
  out.path = path;
  out.phase = dec.phi_signal;
  return out;
}

ExtractionResult extract_absorber_wv(Measured i0_weak, Measured i0_prep, Measured a, int path) {
  check_cell_path(path);
  if (!(a.value > 0.0 && a.value <= 1.0)) throw std::invalid_argument("absorption coefficient must lie in (0, 1]");
  if (!(i0_prep.value > 0.0)) throw std::invalid_argument("preparation mean intensity must be positive");

  const double r = i0_weak.value / i0_prep.value;
  ExtractionResult out;
  out.magnitude = (1.0 - r) / a.value;
  out.error = std::sqrt(sq((1.0 - r) * a.error / a.value) +
                        sq(i0_weak.value * i0_prep.error / sq(i0_prep.value)) +
                        sq(i0_weak.error / i0_prep.value)) /
              a.value;
  out.op = WeakOperator::Path;
  out.path = path;
  return out;
}

std::vector<MeanIntensityRow> mean_intensity_analysis(std::span<const CellFits> cells, double alpha,
                                                      double absorption, double slack) {
  std::array<const CellFits*, 9> slot{};
  for (const CellFits& c : cells) {
    check_cell_path(c.path);
    const CellFits*& s = slot[static_cast<std::size_t>(row_of(c.kind) * 3 + c.path)];
    if (s) throw std::invalid_argument("duplicate cell " + kind_name(c.kind) + ":" + path_name(c.path));
    s = &c;
  }
  std::vector<MeanIntensityRow> rows;
  for (std::size_t n = 0; n < slot.size(); ++n) {
    const InteractionKind kind = kRowKinds[n / 3];
    const int path = static_cast<int>(n % 3);
    if (!slot[n]) throw std::invalid_argument("missing cell " + kind_name(kind) + ":" + path_name(path));
    const FitResult& w = slot[n]->weak;
    const FitResult& p = slot[n]->prep;
    if (!(p.i0 > 0.0)) throw std::invalid_argument("preparation mean intensity must be positive");

    MeanIntensityRow row;
    row.kind = kind;
    row.path = path;
    row.ratio.value = w.i0 / p.i0;
    row.ratio.error = std::abs(row.ratio.value) *
                      std::sqrt(sq(w.err(kI0) / w.i0) + sq(p.err(kI0) / p.i0));
    if (kind == InteractionKind::Absorber) {
      row.expected = path == 1 ? 1.0 - absorption : 1.0;
    } else {
      row.expected = path == 1 ? 1.0 - alpha * alpha / 4.0 : 1.0 + alpha * alpha / 4.0;
    }
    row.consistent = std::abs(row.ratio.value - row.expected) <= 3.0 * row.ratio.error + slack;
    rows.push_back(row);
  }
  return rows;
}

WvMatrix assemble_wv_matrix(std::span<const ExtractionResult> results) {
  std::array<std::array<bool, 3>, 3> seen{};
  WvMatrix m;
  for (const ExtractionResult& r : results) {
    check_cell_path(r.path);
    const int row = row_of(kind_for(r.op));
    if (seen[row][r.path]) throw std::invalid_argument("duplicate weak value for one cell");
    seen[row][r.path] = true;
    m.cell[row][r.path] = {r.magnitude, r.error};
  }
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      if (!seen[r][c]) throw std::invalid_argument("weak value matrix is missing a cell");
    }
  }
  for (int r = 0; r < 3; ++r) {
    double v_row = 0.0, e_row = 0.0, v_col = 0.0, e_col = 0.0;
    for (int k = 0; k < 3; ++k) {
      v_row += m.cell[r][k].value;
      e_row += sq(m.cell[r][k].error);
      v_col += m.cell[k][r].value;
      e_col += sq(m.cell[k][r].error);
    }
    m.row_sum[r] = {v_row, std::sqrt(e_row)};
    m.col_sum[r] = {v_col, std::sqrt(e_col)};
    for (int c = 0; c < 3; ++c) {
      const double ideal = r == c ? 1.0 : 0.0;
      m.matches_identity[r][c] = std::abs(m.cell[r][c].value - ideal) <= 3.0 * m.cell[r][c].error;
    }
  }
  return m;
}

}  // namespace qcc
