#include "qcc/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace qcc {

namespace {

using Eigen::Matrix4d;
using Eigen::MatrixXd;
using Eigen::Vector3d;
using Eigen::Vector4d;
using Eigen::VectorXd;

constexpr double kPi = std::numbers::pi;

struct Data {
  VectorXd chi;
  VectorXd y;
  VectorXd w;  // 1 / sigma
};

Data load(const Interferogram& ifg) {
  ifg.validate();
  const auto n = static_cast<Eigen::Index>(ifg.size());
  if (n < 5) throw std::invalid_argument("a sinusoid fit needs at least 5 points");
  Data d{VectorXd(n), VectorXd(n), VectorXd(n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    d.chi[i] = ifg.chi[static_cast<std::size_t>(i)];
    d.y[i] = ifg.value[static_cast<std::size_t>(i)];
    d.w[i] = 1.0 / ifg.sigma[static_cast<std::size_t>(i)];
  }
  if (d.chi.maxCoeff() == d.chi.minCoeff()) {
    throw std::invalid_argument("all phase-shifter settings are equal");
  }
  return d;
}

// Weighted design for (i0, S, C) at fixed omega.
MatrixXd linear_design(const Data& d, double omega) {
  MatrixXd a(d.chi.size(), 3);
  for (Eigen::Index i = 0; i < d.chi.size(); ++i) {
    const double x = omega * d.chi[i];
    a(i, 0) = d.w[i];
    a(i, 1) = d.w[i] * std::sin(x);
    a(i, 2) = d.w[i] * std::cos(x);
  }
  return a;
}

struct LinearFit {
  Vector3d p;
  double chi2;
};

LinearFit linear_fit(const Data& d, double omega) {
  const MatrixXd a = linear_design(d, omega);
  const VectorXd rhs = d.w.cwiseProduct(d.y);
  const auto qr = a.colPivHouseholderQr();
  if (qr.rank() < 3) {
    throw ConvergenceError("sin and cos terms are not separable on this phase grid");
  }
  const Vector3d p = qr.solve(rhs);
  return {p, (a * p - rhs).squaredNorm()};
}

VectorXd residuals(const Data& d, const Vector4d& p) {
  VectorXd r(d.chi.size());
  for (Eigen::Index i = 0; i < d.chi.size(); ++i) {
    const double x = p[3] * d.chi[i];
    r[i] = d.w[i] * (d.y[i] - (p[0] + p[1] * std::sin(x) + p[2] * std::cos(x)));
  }
  return r;
}

MatrixXd jacobian(const Data& d, const Vector4d& p) {
  MatrixXd j(d.chi.size(), 4);
  for (Eigen::Index i = 0; i < d.chi.size(); ++i) {
    const double x = p[3] * d.chi[i];
    const double s = std::sin(x);
    const double c = std::cos(x);
    j(i, 0) = d.w[i];
    j(i, 1) = d.w[i] * s;
    j(i, 2) = d.w[i] * c;
    j(i, 3) = d.w[i] * d.chi[i] * (p[1] * c - p[2] * s);
  }
  return j;
}

struct Refined {
  Vector4d p;
  double chi2;
  int iterations;
};

// Levenberg-Marquardt on (i0, S, C, omega).
Refined refine(const Data& d, Vector4d p, int max_iterations) {
  double chi2 = residuals(d, p).squaredNorm();
  double lambda = 1e-3;
  for (int it = 1; it <= max_iterations; ++it) {
    const MatrixXd j = jacobian(d, p);
    const Matrix4d n = j.transpose() * j;
    const Vector4d g = j.transpose() * residuals(d, p);
    Matrix4d damped = n;
    for (int k = 0; k < 4; ++k) damped(k, k) += lambda * std::max(n(k, k), 1e-300);
    const Vector4d step = damped.ldlt().solve(g);
    if (!step.allFinite()) throw ConvergenceError("sinusoid fit produced a non-finite step");

    const Vector4d trial = p + step;
    const double trial_chi2 = residuals(d, trial).squaredNorm();
    if (trial_chi2 < chi2) {
      const double amp_scale = std::abs(p[0]) + std::hypot(p[1], p[2]);
      const bool small = std::abs(step[0]) <= 1e-13 * amp_scale &&
                         std::abs(step[1]) <= 1e-13 * amp_scale &&
                         std::abs(step[2]) <= 1e-13 * amp_scale &&
                         std::abs(step[3]) <= 1e-13 * std::abs(p[3]);
      const bool flat = chi2 - trial_chi2 <= 1e-15 * chi2;
      p = trial;
      chi2 = trial_chi2;
      lambda = std::max(lambda * 0.1, 1e-12);
      if (small || flat) return {p, chi2, it};
    } else {
      lambda *= 10.0;
      // No downhill direction left at working precision.
      if (lambda > 1e15) return {p, chi2, it};
    }
  }
  throw ConvergenceError("sinusoid fit did not converge within " + std::to_string(max_iterations) +
                         " iterations");
}

}  // namespace

double canonical_phase(double phi) {
  double r = std::fmod(phi + kPi, 2.0 * kPi);
  if (r < 0.0) r += 2.0 * kPi;
  r -= kPi;
  return r >= kPi ? -kPi : r;
}

double FitResult::err(FitParam p) const { return std::sqrt(std::max(cov[p][p], 0.0)); }

double FitResult::operator()(double chi) const { return i0 + b * std::sin(omega * chi + phi); }

FitResult fit_sinusoid(const Interferogram& ifg, const FitOptions& opts) {
  const Data d = load(ifg);
  const auto n = d.chi.size();

  FitResult out;
  Matrix4d cart_cov = Matrix4d::Zero();  // (i0, S, C, omega)
  Vector4d p;
  double chi2 = 0.0;

  if (opts.fixed_omega) {
    const double omega = *opts.fixed_omega;
    if (!std::isfinite(omega)) throw std::invalid_argument("fixed omega must be finite");
    const LinearFit lin = linear_fit(d, omega);
    p << lin.p, omega;
    chi2 = lin.chi2;
    const MatrixXd a = linear_design(d, omega);
    cart_cov.topLeftCorner<3, 3>() = (a.transpose() * a).inverse();
    out.omega_fixed = true;
    out.iterations = 1;
  } else {
    if (!(opts.nominal_omega > 0.0) || opts.omega_grid_points < 2) {
      throw std::invalid_argument("omega search needs a positive nominal value and two grid points");
    }
    double best_chi2 = std::numeric_limits<double>::infinity();
    Vector4d start = Vector4d::Zero();
    for (int k = 0; k < opts.omega_grid_points; ++k) {
      const double omega =
          opts.nominal_omega * (0.5 + static_cast<double>(k) / (opts.omega_grid_points - 1));
      const LinearFit lin = linear_fit(d, omega);
      if (lin.chi2 < best_chi2) {
        best_chi2 = lin.chi2;
        start << lin.p, omega;
      }
    }
    const Refined r = refine(d, start, opts.max_iterations);
    p = r.p;
    chi2 = r.chi2;
    const MatrixXd j = jacobian(d, p);
    const Matrix4d normal = j.transpose() * j;
    const Eigen::FullPivLU<Matrix4d> lu(normal);
    if (lu.rank() < 4) throw ConvergenceError("omega is not identifiable: no oscillation in data");
    cart_cov = lu.inverse();
    out.omega_fixed = false;
    out.iterations = r.iterations;
  }

  const double s = p[1];
  const double c = p[2];
  const double b = std::hypot(s, c);
  out.i0 = p[0];
  out.b = b;
  out.omega = p[3];
  out.phi = canonical_phase(std::atan2(c, s));

  // (i0, S, C, omega) -> (i0, b, omega, phi)
  Matrix4d g = Matrix4d::Zero();
  g(kI0, 0) = 1.0;
  g(kOmega, 3) = 1.0;
  Matrix4d cov;
  if (b > 0.0) {
    g(kB, 1) = s / b;
    g(kB, 2) = c / b;
    g(kPhi, 1) = -c / (b * b);
    g(kPhi, 2) = s / (b * b);
    cov = g * cart_cov * g.transpose();
  } else {
    cov = g * cart_cov * g.transpose();
    cov(kB, kB) = 0.5 * (cart_cov(1, 1) + cart_cov(2, 2));
    cov(kPhi, kPhi) = kPi * kPi / 3.0;
  }
  for (int r = 0; r < 4; ++r) {
    for (int k = 0; k < 4; ++k) out.cov[r][k] = 0.5 * (cov(r, k) + cov(k, r));
  }
  if (!cov.allFinite()) throw ConvergenceError("fit covariance is not finite");

  const auto dof = n - (out.omega_fixed ? 3 : 4);
  out.chi2_red = chi2 / static_cast<double>(dof);
  return out;
}

std::pair<double, double> contrast(const FitResult& fit) {
  if (!(fit.i0 > 0.0)) throw std::invalid_argument("contrast needs a positive mean intensity");
  const double v = fit.b / fit.i0;
  const double var = fit.cov[kB][kB] / (fit.i0 * fit.i0) +
                     v * v * fit.cov[kI0][kI0] / (fit.i0 * fit.i0) -
                     2.0 * v * fit.cov[kB][kI0] / (fit.i0 * fit.i0);
  return {v, std::sqrt(std::max(var, 0.0))};
}

}  // namespace qcc
