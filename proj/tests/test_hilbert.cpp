#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qcc/hilbert.hpp"

using namespace qcc;

namespace {

CMat random_hermitian(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMat m(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = r; c < n; ++c) {
      const Complex v(g(rng), r == c ? 0.0 : g(rng));
      m(r, c) = v;
      m(c, r) = std::conj(v);
    }
  }
  return m;
}

}  // namespace

TEST(Hilbert, ConstructorsRejectBadSizes) {
  EXPECT_THROW(CVec(0), DimensionError);
  EXPECT_THROW(CMat(0), DimensionError);
  EXPECT_THROW(CVec(kMaxDim + 1), DimensionError);
  EXPECT_THROW(CMat(2, std::vector<Complex>(3)), DimensionError);
  EXPECT_THROW(CVec::basis(3, 3), DimensionError);
}

TEST(Hilbert, TensorPutsLeftOperandFirst) {
  const CVec a = CVec::basis(3, 1);
  const CVec b = CVec::basis(2, 1);
  const CVec ab = tensor(a, b);
  ASSERT_EQ(ab.dim(), 6u);
  EXPECT_EQ(ab[3], Complex(1.0));
  EXPECT_DOUBLE_EQ(ab.norm2(), 1.0);

  const CMat x = tensor(CMat::identity(3), CMat::pauli_x());
  EXPECT_EQ(x(0, 1), Complex(1.0));
  EXPECT_EQ(x(4, 5), Complex(1.0));
  EXPECT_EQ(x(1, 2), Complex(0.0));
}

TEST(Hilbert, TensorOverflowIsRejected) {
  EXPECT_THROW(tensor(CMat::identity(128), CMat::identity(64)), DimensionError);
}

TEST(Hilbert, InnerIsConjugateLinearInBra) {
  CVec a(2), b(2);
  a[0] = Complex(0.0, 1.0);
  b[0] = 1.0;
  EXPECT_EQ(inner(a, b), Complex(0.0, -1.0));
  EXPECT_EQ(inner(b, a), Complex(0.0, 1.0));
  EXPECT_THROW(inner(CVec(2), CVec(3)), DimensionError);
}

TEST(Hilbert, MatmulAndDagger) {
  const CMat x = CMat::pauli_x();
  EXPECT_EQ(matmul(x, x), CMat::identity(2));
  CMat m(2, {Complex(1, 2), Complex(3, 4), Complex(5, 6), Complex(7, 8)});
  const CMat d = dagger(m);
  EXPECT_EQ(d(0, 1), Complex(5, -6));
  EXPECT_EQ(d(1, 0), Complex(3, -4));
}

TEST(Hilbert, MatrixElementMatchesApply) {
  std::mt19937_64 rng(3);
  const CMat h = random_hermitian(4, rng);
  const CVec v = CVec::basis(4, 2);
  const CVec w = CVec::basis(4, 1);
  EXPECT_EQ(matrix_element(w, h, v), inner(w, apply(h, v)));
  EXPECT_EQ(matrix_element(w, h, v), h(1, 2));
}

TEST(Hilbert, ExpmOfZeroIsIdentity) {
  EXPECT_LE(max_abs_diff(expm(CMat(5)), CMat::identity(5)), 0.0);
}

TEST(Hilbert, ExpmOfPauliRotationMatchesEuler) {
  for (double a : {0.01, 0.5, std::numbers::pi, 5.0, 40.0}) {
    const CMat u = expm(Complex(0.0, -0.5 * a) * CMat::pauli_x());
    CMat euler = std::cos(0.5 * a) * CMat::identity(2);
    euler -= Complex(0.0, std::sin(0.5 * a)) * CMat::pauli_x();
    EXPECT_LE(max_abs_diff(u, euler), 1e-12) << "angle " << a;
  }
}

TEST(Hilbert, ExpmOfAntiHermitianIsUnitary) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const CMat u = expm(Complex(0.0, -1.0) * random_hermitian(6, rng));
    EXPECT_LE(max_abs_diff(matmul(dagger(u), u), CMat::identity(6)), 1e-11);
  }
}

TEST(Hilbert, ExpmRejectsBadInput) {
  EXPECT_THROW(expm(CMat::identity(2), 0.0), std::invalid_argument);
  EXPECT_THROW(expm(CMat::identity(2), 1e-3), std::invalid_argument);
  CMat bad = CMat::identity(2);
  bad(0, 0) = std::nan("");
  EXPECT_THROW(expm(bad), ConvergenceError);
}

TEST(Hilbert, NormInfAndFinite) {
  CMat m(2, {Complex(1, 0), Complex(0, -2), Complex(3, 4), Complex(0, 0)});
  EXPECT_DOUBLE_EQ(m.norm_inf(), 5.0);
  EXPECT_TRUE(m.all_finite());
}
