#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "qcc/extract.hpp"

using namespace qcc;

namespace {

constexpr double kPi = std::numbers::pi;

FitResult phasor(double b, double phi, double db = 0.1, double dphi = 0.05, double i0 = 1.0) {
  FitResult f;
  f.i0 = i0;
  f.b = b;
  f.omega = 2.0;
  f.phi = phi;
  f.cov[kB][kB] = db * db;
  f.cov[kPhi][kPhi] = dphi * dphi;
  f.cov[kI0][kI0] = 1e-6;
  return f;
}

std::vector<ExtractionResult> matrix_inputs(const double (&v)[3][3], const double (&e)[3][3]) {
  const WeakOperator ops[3] = {WeakOperator::SpinX, WeakOperator::Path, WeakOperator::EnergyX};
  std::vector<ExtractionResult> out;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      ExtractionResult x;
      x.magnitude = v[r][c];
      x.error = e[r][c];
      x.op = ops[r];
      x.path = c;
      out.push_back(x);
    }
  }
  return out;
}

}  // namespace

TEST(Extract, OperatorKindMapping) {
  for (auto k : {InteractionKind::DC, InteractionKind::Absorber, InteractionKind::RF}) {
    EXPECT_EQ(kind_for(operator_for(k)), k);
  }
  EXPECT_EQ(operator_for(InteractionKind::DC), WeakOperator::SpinX);
}

TEST(Extract, IdenticalOscillationsCancel) {
  const auto d = decompose_signal(phasor(0.4, 1.0), phasor(0.4, 1.0));
  EXPECT_EQ(d.b_signal, 0.0);
  EXPECT_TRUE(d.fallback);
  EXPECT_DOUBLE_EQ(d.db_signal, 0.1);
}

TEST(Extract, FallbackTakesLargerError) {
  const auto d = decompose_signal(phasor(0.4, 1.0, 0.2), phasor(0.4, 1.0, 0.3));
  EXPECT_TRUE(d.fallback);
  EXPECT_DOUBLE_EQ(d.db_signal, 0.3);
}

TEST(Extract, NoPreparationOscillation) {
  const auto d = decompose_signal(phasor(0.7, -0.4, 0.02), phasor(0.0, 0.0, 0.0));
  EXPECT_NEAR(d.b_signal, 0.7, 1e-15);
  EXPECT_NEAR(d.db_signal, 0.02, 1e-15);
  EXPECT_NEAR(d.phi_signal, -0.4, 1e-15);
  EXPECT_FALSE(d.fallback);
  // the preparation amplitude error still enters through cos(dphi)
  const auto e = decompose_signal(phasor(0.7, -0.4, 0.02), phasor(0.0, 0.0, 0.03));
  EXPECT_NEAR(e.db_signal, std::hypot(0.02, std::cos(0.4) * 0.03), 1e-15);
}

TEST(Extract, QuadraturePhasors) {
  const auto d = decompose_signal(phasor(5.0, kPi / 2.0), phasor(3.0, 0.0));
  EXPECT_NEAR(d.b_signal, std::sqrt(34.0), 1e-14);
  // direct phasor subtraction
  const Complex diff = std::polar(5.0, kPi / 2.0) - std::polar(3.0, 0.0);
  EXPECT_NEAR(d.b_signal, std::abs(diff), 1e-14);
  EXPECT_NEAR(d.phi_signal, std::arg(diff), 1e-14);
  const double expected_err =
      std::sqrt(std::pow(5.0 * 0.1, 2) + std::pow(3.0 * 0.1, 2) + std::pow(15.0, 2) * 2.0 * 0.05 * 0.05) /
      std::sqrt(34.0);
  EXPECT_NEAR(d.db_signal, expected_err, 1e-14);
}

TEST(Extract, OmegaMismatch) {
  FitResult w = phasor(1.0, 0.0);
  w.omega = 2.1;
  EXPECT_THROW(decompose_signal(w, phasor(1.0, 0.0)), std::invalid_argument);
}

TEST(Extract, RotationMagnitudeInversion) {
  SignalDecomposition d;
  d.b_signal = 0.17453;
  d.db_signal = 0.01;
  const auto r = extract_rotation_wv(d, {1.0, 0.0}, {0.5, 0.0}, {kPi / 9.0, 0.0}, WeakOperator::SpinX, 0);
  EXPECT_NEAR(r.magnitude, 0.99998324, 1e-8);
  EXPECT_NEAR(r.error, 0.01 / (0.5 * kPi / 9.0), 1e-14);
  ASSERT_TRUE(r.phase.has_value());
}

TEST(Extract, RotationErrorQuadrature) {
  SignalDecomposition d;
  d.b_signal = 0.02;
  d.db_signal = 0.002;
  const auto r = extract_rotation_wv(d, {0.1, 0.001}, {0.5, 0.01}, {0.35, 0.0035}, WeakOperator::EnergyX, 2);
  const double m = 0.02 / (0.1 * 0.5 * 0.35);
  EXPECT_NEAR(r.magnitude, m, 1e-14);
  EXPECT_NEAR(r.error, m * std::sqrt(0.01 + 1e-4 + 4e-4 + 1e-4), 1e-12);
  EXPECT_GT(r.error, 0.0);
}

TEST(Extract, RotationGuards) {
  SignalDecomposition d;
  EXPECT_THROW(extract_rotation_wv(d, {1, 0}, {0, 0}, {0.3, 0}, WeakOperator::SpinX, 0), std::invalid_argument);
  EXPECT_THROW(extract_rotation_wv(d, {1, 0}, {0.5, 0}, {0, 0}, WeakOperator::SpinX, 0), std::invalid_argument);
  EXPECT_THROW(extract_rotation_wv(d, {0, 0}, {0.5, 0}, {0.3, 0}, WeakOperator::SpinX, 0), std::invalid_argument);
  EXPECT_THROW(extract_rotation_wv(d, {1, 0}, {0.5, 0}, {0.3, 0}, WeakOperator::Path, 0), std::invalid_argument);
  EXPECT_THROW(extract_rotation_wv(d, {1, 0}, {0.5, 0}, {0.3, 0}, WeakOperator::SpinX, 3), std::invalid_argument);
}

TEST(Extract, AbsorberValues) {
  EXPECT_NEAR(extract_absorber_wv({0.9, 0}, {1.0, 0}, {0.1, 0}).magnitude, 1.0, 1e-12);
  EXPECT_NEAR(extract_absorber_wv({0.92, 0}, {1.0, 0}, {0.1, 0}).magnitude, 0.8, 1e-12);
  EXPECT_EQ(extract_absorber_wv({1.3, 0.1}, {1.3, 0.1}, {0.1, 0.01}, 0).magnitude, 0.0);
  EXPECT_THROW(extract_absorber_wv({1, 0}, {1, 0}, {0, 0}), std::invalid_argument);
  EXPECT_THROW(extract_absorber_wv({1, 0}, {1, 0}, {1.1, 0}), std::invalid_argument);
}

TEST(Extract, AbsorberError) {
  const auto r = extract_absorber_wv({0.9, 0.009}, {1.0, 0.01}, {0.1, 0.01});
  const double expected = std::sqrt(std::pow(0.1 * 0.01 / 0.1, 2) + std::pow(0.9 * 0.01, 2) + std::pow(0.009, 2)) / 0.1;
  EXPECT_NEAR(r.error, expected, 1e-14);
  // the published 0.85(12) lies within one error bar of 0.92 -> 0.80
  const auto p = extract_absorber_wv({0.92, 0.0}, {1.0, 0.0}, {0.1, 0.0});
  EXPECT_LE(std::abs(p.magnitude - 0.85), 0.12);
}

TEST(Extract, PublishedMatrixSums) {
  const double v[3][3] = {{0.90, 0.17, 0.00}, {0.07, 0.85, 0.09}, {0.09, 0.03, 0.70}};
  const double e[3][3] = {{0.10, 0.07, 0.08}, {0.08, 0.12, 0.07}, {0.07, 0.05, 0.07}};
  const WvMatrix m = assemble_wv_matrix(matrix_inputs(v, e));
  const double rows[3] = {1.07, 1.01, 0.82};
  const double row_err[3] = {0.15, 0.16, 0.11};
  const double cols[3] = {1.06, 1.05, 0.79};
  for (int k = 0; k < 3; ++k) {
    EXPECT_NEAR(m.row_sum[k].value, rows[k], 1e-12);
    EXPECT_NEAR(m.row_sum[k].error, row_err[k], 0.005);
    EXPECT_NEAR(m.col_sum[k].value, cols[k], 1e-12);
  }
  EXPECT_NEAR(m.col_sum[0].error, 0.15, 0.005);
  EXPECT_NEAR(m.col_sum[1].error, 0.15, 0.005);
  EXPECT_NEAR(m.col_sum[2].error, std::sqrt(0.0064 + 0.0049 + 0.0049), 1e-12);
  EXPECT_TRUE(m.matches_identity[0][0]);
  EXPECT_FALSE(m.matches_identity[2][2]);
  EXPECT_TRUE(m.matches_identity[0][1]);
}

TEST(Extract, ZeroMatrix) {
  const double z[3][3] = {};
  const WvMatrix m = assemble_wv_matrix(matrix_inputs(z, z));
  for (int k = 0; k < 3; ++k) {
    EXPECT_EQ(m.row_sum[k].value, 0.0);
    EXPECT_EQ(m.col_sum[k].value, 0.0);
  }
}

TEST(Extract, MatrixNeedsEveryCellOnce) {
  const double z[3][3] = {};
  auto in = matrix_inputs(z, z);
  in.pop_back();
  EXPECT_THROW(assemble_wv_matrix(in), std::invalid_argument);
  in.push_back(in.front());
  EXPECT_THROW(assemble_wv_matrix(in), std::invalid_argument);
}

TEST(Extract, MeanIntensityExpectations) {
  const double alpha = kPi / 9.0;
  std::vector<CellFits> cells;
  for (auto kind : kRowKinds) {
    for (int p = 0; p < 3; ++p) {
      CellFits c;
      c.kind = kind;
      c.path = p;
      c.prep = phasor(0.0, 0.0, 0.1, 0.1, 2.0);
      double ratio = 1.0;
      if (kind == InteractionKind::Absorber) {
        ratio = p == 1 ? 0.9 : 1.0;
      } else {
        ratio = p == 1 ? 1.0 - alpha * alpha / 4.0 : 1.0 + alpha * alpha / 4.0;
      }
      c.weak = phasor(0.0, 0.0, 0.1, 0.1, 2.0 * ratio);
      cells.push_back(c);
    }
  }
  const auto rows = mean_intensity_analysis(cells, alpha, 0.1);
  ASSERT_EQ(rows.size(), 9u);
  EXPECT_NEAR(rows[0].ratio.value, 1.0305, 1e-4);
  EXPECT_NEAR(rows[4].ratio.value, 0.9, 1e-15);
  for (const auto& r : rows) EXPECT_TRUE(r.consistent);

  cells[4].weak.i0 = 2.0;
  EXPECT_FALSE(mean_intensity_analysis(cells, alpha, 0.1)[4].consistent);
  cells.pop_back();
  EXPECT_THROW(mean_intensity_analysis(cells, alpha, 0.1), std::invalid_argument);
}
