#include "qcc/pan.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qcc/model.hpp"

namespace qcc::pan {

namespace {

void check_n(int n) {
  if (n < kMinPaths || n > kMaxPaths) {
    throw std::out_of_range("number of paths " + std::to_string(n) + " outside [" +
                            std::to_string(kMinPaths) + ", " + std::to_string(kMaxPaths) + "]");
  }
}

void check_property(int n, int p) {
  if (p < 1 || p > n - 1) throw std::out_of_range("property index out of range");
}

void check_path(int n, int j) {
  if (j < 1 || j > n) throw std::out_of_range("path index out of range");
}

void check_phases(int n, std::span<const double> phases) {
  if (phases.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("need one phase per path");
  }
}

std::size_t properties_dim(int n) { return std::size_t{1} << (n - 1); }

CMat path_projector(int n, int j) {
  return tensor(CMat::projector(static_cast<std::size_t>(n), static_cast<std::size_t>(j - 1)),
                CMat::identity(properties_dim(n)));
}

}  // namespace

std::size_t dimension(int n) {
  check_n(n);
  return static_cast<std::size_t>(n) * properties_dim(n);
}

std::size_t index(int n, int path, unsigned bits) {
  check_n(n);
  return static_cast<std::size_t>(path) * properties_dim(n) + bits;
}

unsigned all_ones(int n) { return static_cast<unsigned>(properties_dim(n) - 1); }

unsigned flipped(int n, int p) {
  check_property(n, p);
  return all_ones(n) ^ (1u << (n - 1 - p));
}

States states(int n, std::span<const double> phases) {
  check_n(n);
  check_phases(n, phases);
  const double a = 1.0 / std::sqrt(static_cast<double>(n));
  CVec pre(dimension(n));
  CVec post(dimension(n));
  pre[index(n, 0, all_ones(n))] = a;
  for (int j = 2; j <= n; ++j) pre[index(n, j - 1, flipped(n, j - 1))] = a;
  for (int j = 1; j <= n; ++j) {
    post[index(n, j - 1, all_ones(n))] = std::polar(a, phases[static_cast<std::size_t>(j - 1)]);
  }
  return {std::move(pre), std::move(post)};
}

CMat generator(int n, int p, int j) {
  check_n(n);
  check_property(n, p);
  check_path(n, j);
  // sigma_x on factor p, identity on the other properties
  CMat flip = CMat::identity(1);
  for (int q = 1; q <= n - 1; ++q) flip = tensor(flip, q == p ? CMat::pauli_x() : CMat::identity(2));
  return tensor(CMat::projector(static_cast<std::size_t>(n), static_cast<std::size_t>(j - 1)), flip);
}

CMat rotation(int n, int p, int j, double alpha) {
  const CMat gen = generator(n, p, j);
  CMat op = CMat::identity(dimension(n));
  op -= (1.0 - std::cos(0.5 * alpha)) * path_projector(n, j);
  op -= Complex(0.0, std::sin(0.5 * alpha)) * gen;
  return op;
}

CMat absorber(int n, int j, double absorption) {
  check_n(n);
  check_path(n, j);
  if (!(absorption >= 0.0 && absorption <= 1.0)) {
    throw std::invalid_argument("absorption coefficient must lie in [0, 1]");
  }
  CMat op = CMat::identity(dimension(n));
  op -= (1.0 - std::sqrt(1.0 - absorption)) * path_projector(n, j);
  return op;
}

double intensity(int n, int p, int j, double alpha, std::span<const double> phases) {
  const States s = states(n, phases);
  return std::norm(matrix_element(s.post, rotation(n, p, j, alpha), s.pre));
}

double intensity_closed(int n, int p, int j, double alpha, std::span<const double> phases) {
  check_n(n);
  check_property(n, p);
  check_path(n, j);
  check_phases(n, phases);
  const double d_host = j == p + 1 ? 1.0 : 0.0;
  const double d_ref = j == 1 ? 1.0 : 0.0;
  const double s = std::sin(0.5 * alpha);
  const double chi_ref = phases[0];
  const double chi_host = phases[static_cast<std::size_t>(p)];
  const double bracket =
      1.0 + 2.0 * d_host * s * std::sin(chi_ref - chi_host) + d_host * s * s - d_ref * s * s;
  return bracket / (static_cast<double>(n) * n);
}

double absorber_intensity(int n, int j, double absorption, std::span<const double> phases) {
  const States s = states(n, phases);
  return std::norm(matrix_element(s.post, absorber(n, j, absorption), s.pre));
}

Complex weak_value_flip(int n, int p, int j, std::span<const double> phases) {
  const States s = states(n, phases);
  return weak_value(s.post, generator(n, p, j), s.pre);
}

Complex weak_value_path(int n, int j, std::span<const double> phases) {
  check_path(n, j);
  const States s = states(n, phases);
  return weak_value(s.post, path_projector(n, j), s.pre);
}

}  // namespace qcc::pan
