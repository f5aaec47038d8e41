#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qcc/fit.hpp"

using namespace qcc;

namespace {

constexpr double kPi = std::numbers::pi;

Interferogram sampled(double i0, double b, double omega, double phi, int n, double span, double sigma = 1.0) {
  Interferogram ifg;
  for (int i = 0; i < n; ++i) {
    const double chi = span * i / n;
    ifg.chi.push_back(chi);
    ifg.value.push_back(i0 + b * std::sin(omega * chi + phi));
    ifg.sigma.push_back(sigma);
  }
  ifg.meta.stream = "fit";
  return ifg;
}

FitOptions fixed(double omega) {
  FitOptions o;
  o.fixed_omega = omega;
  return o;
}

FitOptions free_around(double nominal) {
  FitOptions o;
  o.nominal_omega = nominal;
  return o;
}

}  // namespace

TEST(Fit, RecoversNoiselessParametersFreeOmega) {
  const auto r = fit_sinusoid(sampled(100.0, 20.0, 1.0, 0.5, 40, 4.0 * kPi), free_around(1.0));
  EXPECT_NEAR(r.i0, 100.0, 1e-9);
  EXPECT_NEAR(r.b, 20.0, 1e-9);
  EXPECT_NEAR(r.omega, 1.0, 1e-9);
  EXPECT_NEAR(r.phi, 0.5, 1e-9);
  EXPECT_FALSE(r.omega_fixed);
  EXPECT_GT(r.err(kOmega), 0.0);
}

TEST(Fit, RecoversNoiselessParametersFixedOmega) {
  const auto r = fit_sinusoid(sampled(0.11, 0.04, 2.0, -2.9, 16, 4.0 * kPi), fixed(2.0));
  EXPECT_NEAR(r.i0, 0.11, 1e-12);
  EXPECT_NEAR(r.b, 0.04, 1e-12);
  EXPECT_NEAR(r.phi, -2.9, 1e-10);
  EXPECT_TRUE(r.omega_fixed);
  EXPECT_EQ(r.err(kOmega), 0.0);
  for (int k = 0; k < 4; ++k) EXPECT_EQ(r.cov[kOmega][static_cast<std::size_t>(k)], 0.0);
}

TEST(Fit, NegativeAmplitudeIsFoldedIntoPhase) {
  const auto r = fit_sinusoid(sampled(5.0, -1.0, 2.0, 0.3, 16, 4.0 * kPi), fixed(2.0));
  EXPECT_NEAR(r.b, 1.0, 1e-12);
  EXPECT_NEAR(r.phi, canonical_phase(0.3 + kPi), 1e-12);
  EXPECT_GE(r.phi, -kPi);
  EXPECT_LT(r.phi, kPi);
}

TEST(Fit, ZeroAmplitudeWithFixedOmega) {
  const auto r = fit_sinusoid(sampled(3.0, 0.0, 2.0, 0.0, 16, 4.0 * kPi, 0.1), fixed(2.0));
  EXPECT_NEAR(r.i0, 3.0, 1e-14);
  EXPECT_NEAR(r.b, 0.0, 1e-14);
  EXPECT_GT(r.err(kB), 0.0);
  EXPECT_TRUE(std::isfinite(r.err(kPhi)));
  EXPECT_NEAR(r.chi2_red, 0.0, 1e-20);
}

TEST(Fit, ConstantDataLeavesOmegaUnidentified) {
  EXPECT_THROW(fit_sinusoid(sampled(3.0, 0.0, 2.0, 0.0, 16, 4.0 * kPi), free_around(2.0)), ConvergenceError);
}

TEST(Fit, CovarianceMatchesAnalyticForUniformGrid) {
  // on a full-period uniform grid the design columns are orthogonal
  const auto r = fit_sinusoid(sampled(10.0, 2.0, 2.0, 0.7, 16, 4.0 * kPi, 0.5), fixed(2.0));
  EXPECT_NEAR(r.err(kI0), 0.5 / std::sqrt(16.0), 1e-12);
  EXPECT_NEAR(r.err(kB), 0.5 * std::sqrt(2.0 / 16.0), 1e-12);
  EXPECT_NEAR(r.err(kPhi), 0.5 * std::sqrt(2.0 / 16.0) / 2.0, 1e-12);
}

TEST(Fit, ContrastAndError) {
  FitResult f;
  f.i0 = 100.0;
  f.b = 20.0;
  f.cov[kI0][kI0] = 4.0;
  f.cov[kB][kB] = 1.0;
  const auto [c, dc] = contrast(f);
  EXPECT_DOUBLE_EQ(c, 0.2);
  EXPECT_NEAR(dc, 0.2 * std::sqrt(1.0 / 400.0 + 4.0 / 10000.0), 1e-15);
  f.i0 = 0.0;
  EXPECT_THROW(contrast(f), std::invalid_argument);
}

TEST(Fit, DegenerateInputs) {
  auto few = sampled(1.0, 0.5, 2.0, 0.0, 4, 4.0 * kPi);
  EXPECT_THROW(fit_sinusoid(few, fixed(2.0)), std::invalid_argument);
  auto same = sampled(1.0, 0.5, 2.0, 0.0, 8, 4.0 * kPi);
  for (double& c : same.chi) c = 0.5;
  EXPECT_THROW(fit_sinusoid(same, fixed(2.0)), std::invalid_argument);
  // omega chi = k pi on every point: sin column vanishes
  auto aliased = sampled(1.0, 0.5, 2.0, 0.0, 8, 4.0 * kPi);
  for (std::size_t i = 0; i < aliased.size(); ++i) aliased.chi[i] = kPi * static_cast<double>(i);
  EXPECT_THROW(fit_sinusoid(aliased, fixed(1.0)), ConvergenceError);
}

TEST(Fit, ScaleInvariance) {
  const auto a = fit_sinusoid(sampled(4.0, 1.0, 2.0, 1.1, 16, 4.0 * kPi, 0.2), free_around(2.0));
  const auto b = fit_sinusoid(sampled(4000.0, 1000.0, 2.0, 1.1, 16, 4.0 * kPi, 200.0), free_around(2.0));
  EXPECT_NEAR(b.i0 / 1000.0, a.i0, 1e-9);
  EXPECT_NEAR(b.b / 1000.0, a.b, 1e-9);
  EXPECT_NEAR(b.omega, a.omega, 1e-12);
  EXPECT_NEAR(b.err(kB) / 1000.0, a.err(kB), 1e-9);
  EXPECT_NEAR(contrast(a).first, contrast(b).first, 1e-12);
}

TEST(Fit, ModelEvaluation) {
  FitResult f;
  f.i0 = 1.0;
  f.b = 0.5;
  f.omega = 2.0;
  f.phi = 0.25;
  EXPECT_DOUBLE_EQ(f(0.3), 1.0 + 0.5 * std::sin(0.6 + 0.25));
}

TEST(Fit, CanonicalPhase) {
  EXPECT_DOUBLE_EQ(canonical_phase(0.0), 0.0);
  EXPECT_NEAR(canonical_phase(kPi), -kPi, 1e-15);
  EXPECT_NEAR(canonical_phase(3.0 * kPi + 0.1), -kPi + 0.1, 1e-12);
  EXPECT_NEAR(canonical_phase(-kPi - 0.1), kPi - 0.1, 1e-12);
}
