#include "qcc/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qcc {

namespace {

void check_dim(std::size_t dim) {
  if (dim == 0 || dim > kMaxDim) {
    throw DimensionError("dimension " + std::to_string(dim) + " outside [1, " +
                         std::to_string(kMaxDim) + "]");
  }
}

void require_same(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": dimension mismatch " + std::to_string(a) +
                         " vs " + std::to_string(b));
  }
}

std::size_t checked_product(std::size_t a, std::size_t b) {
  if (a > kMaxDim / b) {
    throw DimensionError("tensor product dimension exceeds " + std::to_string(kMaxDim));
  }
  return a * b;
}

}  // namespace

// ---------------------------------------------------------------------------
// CVec

CVec::CVec(std::size_t dim) : amps_(dim) { check_dim(dim); }

CVec::CVec(std::vector<Complex> amps) : amps_(std::move(amps)) { check_dim(amps_.size()); }

CVec CVec::basis(std::size_t dim, std::size_t index) {
  CVec v(dim);
  if (index >= dim) {
    throw DimensionError("basis index " + std::to_string(index) + " out of range");
  }
  v.amps_[index] = 1.0;
  return v;
}

double CVec::norm2() const {
  double sum = 0.0;
  for (const auto& a : amps_) sum += std::norm(a);
  return sum;
}

CVec& CVec::operator+=(const CVec& other) {
  require_same(dim(), other.dim(), "vector add");
  for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] += other.amps_[i];
  return *this;
}

CVec& CVec::operator*=(Complex scale) {
  for (auto& a : amps_) a *= scale;
  return *this;
}

CVec operator+(CVec a, const CVec& b) { return a += b; }
CVec operator*(Complex scale, CVec v) { return v *= scale; }

// ---------------------------------------------------------------------------
// CMat

CMat::CMat(std::size_t dim) : dim_(dim), entries_() {
  check_dim(dim);
  entries_.assign(dim * dim, Complex{});
}

CMat::CMat(std::size_t dim, std::vector<Complex> row_major)
    : dim_(dim), entries_(std::move(row_major)) {
  check_dim(dim);
  if (entries_.size() != dim * dim) {
    throw DimensionError("matrix needs " + std::to_string(dim * dim) + " entries, got " +
                         std::to_string(entries_.size()));
  }
}

CMat CMat::identity(std::size_t dim) {
  CMat m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

CMat CMat::projector(std::size_t dim, std::size_t k) {
  CMat m(dim);
  if (k >= dim) throw DimensionError("projector index out of range");
  m(k, k) = 1.0;
  return m;
}

CMat CMat::pauli_x() { return CMat(2, {0.0, 1.0, 1.0, 0.0}); }

double CMat::norm_inf() const {
  double best = 0.0;
  for (std::size_t r = 0; r < dim_; ++r) {
    double row = 0.0;
    for (std::size_t c = 0; c < dim_; ++c) row += std::abs((*this)(r, c));
    best = std::max(best, row);
  }
  return best;
}

bool CMat::all_finite() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

CMat& CMat::operator+=(const CMat& other) {
  require_same(dim_, other.dim_, "matrix add");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

CMat& CMat::operator-=(const CMat& other) {
  require_same(dim_, other.dim_, "matrix subtract");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

CMat& CMat::operator*=(Complex scale) {
  for (auto& e : entries_) e *= scale;
  return *this;
}

CMat operator+(CMat a, const CMat& b) { return a += b; }
CMat operator-(CMat a, const CMat& b) { return a -= b; }
CMat operator*(Complex scale, CMat m) { return m *= scale; }

// ---------------------------------------------------------------------------
// Products

CMat tensor(const CMat& a, const CMat& b) {
  const std::size_t na = a.dim();
  const std::size_t nb = b.dim();
  CMat out(checked_product(na, nb));
  for (std::size_t ra = 0; ra < na; ++ra) {
    for (std::size_t ca = 0; ca < na; ++ca) {
      const Complex x = a(ra, ca);
      if (x == Complex{}) continue;
      for (std::size_t rb = 0; rb < nb; ++rb) {
        for (std::size_t cb = 0; cb < nb; ++cb) {
          out(ra * nb + rb, ca * nb + cb) = x * b(rb, cb);
        }
      }
    }
  }
  return out;
}

CVec tensor(const CVec& a, const CVec& b) {
  CVec out(checked_product(a.dim(), b.dim()));
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t k = 0; k < b.dim(); ++k) out[i * b.dim() + k] = a[i] * b[k];
  }
  return out;
}

Complex inner(const CVec& bra, const CVec& ket) {
  require_same(bra.dim(), ket.dim(), "inner product");
  Complex sum{};
  for (std::size_t i = 0; i < bra.dim(); ++i) sum += std::conj(bra[i]) * ket[i];
  return sum;
}

CVec apply(const CMat& op, const CVec& v) {
  require_same(op.dim(), v.dim(), "apply");
  CVec out(v.dim());
  for (std::size_t r = 0; r < op.dim(); ++r) {
    Complex sum{};
    for (std::size_t c = 0; c < op.dim(); ++c) sum += op(r, c) * v[c];
    out[r] = sum;
  }
  return out;
}

CMat matmul(const CMat& a, const CMat& b) {
  require_same(a.dim(), b.dim(), "matmul");
  const std::size_t n = a.dim();
  CMat out(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex x = a(r, k);
      if (x == Complex{}) continue;
      for (std::size_t c = 0; c < n; ++c) out(r, c) += x * b(k, c);
    }
  }
  return out;
}

CMat dagger(const CMat& a) {
  CMat out(a.dim());
  for (std::size_t r = 0; r < a.dim(); ++r) {
    for (std::size_t c = 0; c < a.dim(); ++c) out(c, r) = std::conj(a(r, c));
  }
  return out;
}

Complex matrix_element(const CVec& bra, const CMat& op, const CVec& ket) {
  return inner(bra, apply(op, ket));
}

double max_abs_diff(const CMat& a, const CMat& b) {
  require_same(a.dim(), b.dim(), "compare");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
  }
  return worst;
}

double max_abs_diff(const CVec& a, const CVec& b) {
  require_same(a.dim(), b.dim(), "compare");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

// ---------------------------------------------------------------------------
// Exponential

CMat expm(const CMat& a, double terms_tolerance) {
  if (!(terms_tolerance > 0.0 && terms_tolerance <= 1e-6)) {
    throw std::invalid_argument("expm tolerance must lie in (0, 1e-6]");
  }
  if (!a.all_finite()) throw ConvergenceError("expm: non-finite input");

  constexpr int kMaxSquarings = 64;
  constexpr int kMaxTerms = 200;

  const double norm = a.norm_inf();
  int squarings = 0;
  if (norm > 1.0) squarings = static_cast<int>(std::ceil(std::log2(norm)));
  if (squarings > kMaxSquarings) throw ConvergenceError("expm: input norm too large");

  const CMat scaled = std::ldexp(1.0, -squarings) * a;
  CMat sum = CMat::identity(a.dim());
  CMat term = CMat::identity(a.dim());
  bool converged = false;
  for (int k = 1; k <= kMaxTerms; ++k) {
    term = matmul(term, scaled);
    term *= 1.0 / k;
    sum += term;
    double largest = 0.0;
    for (const auto& e : term.entries()) largest = std::max(largest, std::abs(e));
    if (largest < terms_tolerance) {
      converged = true;
      break;
    }
  }
  if (!converged || !sum.all_finite()) {
    throw ConvergenceError("expm: Taylor series did not converge");
  }
  for (int s = 0; s < squarings; ++s) sum = matmul(sum, sum);
  return sum;
}

}  // namespace qcc
