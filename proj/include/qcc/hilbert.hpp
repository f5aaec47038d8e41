#pragma once

// Small dense complex linear algebra over the path (x) spin (x) energy spaces.
// Dimensions stay in the tens; nothing here is tuned for large problems.

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace qcc {

using Complex = std::complex<double>;

/// Largest dimension accepted by any constructor or tensor product.
inline constexpr std::size_t kMaxDim = 4096;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Column state vector.
class CVec {
 public:
  explicit CVec(std::size_t dim);
  explicit CVec(std::vector<Complex> amps);

  static CVec basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return amps_.size(); }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }
  Complex& operator[](std::size_t i) { return amps_[i]; }
  std::span<const Complex> amps() const { return amps_; }

  double norm2() const;

  CVec& operator+=(const CVec& other);
  CVec& operator*=(Complex scale);

  friend bool operator==(const CVec&, const CVec&) = default;

 private:
  std::vector<Complex> amps_;
};

CVec operator+(CVec a, const CVec& b);
CVec operator*(Complex scale, CVec v);

/// Square matrix, row-major.
class CMat {
 public:
  explicit CMat(std::size_t dim);
  CMat(std::size_t dim, std::vector<Complex> row_major);

  static CMat identity(std::size_t dim);
  /// |k><k| on a space of the given dimension.
  static CMat projector(std::size_t dim, std::size_t k);
  static CMat pauli_x();

  std::size_t dim() const { return dim_; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * dim_ + c]; }
  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * dim_ + c]; }
  std::span<const Complex> entries() const { return entries_; }

  /// Maximum absolute row sum.
  double norm_inf() const;
  bool all_finite() const;

  CMat& operator+=(const CMat& other);
  CMat& operator-=(const CMat& other);
  CMat& operator*=(Complex scale);

  friend bool operator==(const CMat&, const CMat&) = default;

 private:
  std::size_t dim_;
  std::vector<Complex> entries_;
};

CMat operator+(CMat a, const CMat& b);
CMat operator-(CMat a, const CMat& b);
CMat operator*(Complex scale, CMat m);

/// Kronecker product; the left operand owns the most significant index.
CMat tensor(const CMat& a, const CMat& b);
CVec tensor(const CVec& a, const CVec& b);

/// <bra|ket>, conjugate-linear in the first argument.
Complex inner(const CVec& bra, const CVec& ket);

CVec apply(const CMat& op, const CVec& v);
CMat matmul(const CMat& a, const CMat& b);
CMat dagger(const CMat& a);

/// <bra|op|ket>
Complex matrix_element(const CVec& bra, const CMat& op, const CVec& ket);

double max_abs_diff(const CMat& a, const CMat& b);
double max_abs_diff(const CVec& a, const CVec& b);

/// Matrix exponential by scaling-and-squaring around a plain Taylor series.
/// Terms are summed until the largest entry of the next term drops below
/// `terms_tolerance`, which must lie in (0, 1e-6].
CMat expm(const CMat& a, double terms_tolerance = 1e-16);

}  // namespace qcc
