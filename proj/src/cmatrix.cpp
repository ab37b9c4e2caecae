#include "mwwyd/cmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mwwyd/errors.hpp"

namespace mwwyd {
namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.dim() != b.dim()) {
    throw DimensionError(std::string(op) + ": dimension mismatch (" + std::to_string(a.dim()) +
                         "x" + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + "x" +
                         std::to_string(b.dim()) + ")");
  }
}

double frobenius(const ComplexMatrix& x) { return std::sqrt(hs_norm_sq(x)); }

double off_diagonal_norm(const ComplexMatrix& x) {
  double acc = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i)
    for (std::size_t j = 0; j < x.dim(); ++j)
      if (i != j) acc += std::norm(x(i, j));
  return std::sqrt(acc);
}

// Zeroes a(p,q) with the unitary G acting on columns p,q:
//   G = diag(1, conj(e)) * [[c, s], [-s, c]],  e = a(p,q)/|a(p,q)|.
// A <- G^dag A G, V <- V G.
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const Complex phase = apq / mag;
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double theta = (aqq - app) / (2.0 * mag);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const Complex g_pp = c;
  const Complex g_pq = s;
  const Complex g_qp = -s * std::conj(phase);
  const Complex g_qq = c * std::conj(phase);

  const std::size_t n = a.dim();
  // A <- A G
  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * g_pp + akq * g_qp;
    a(k, q) = akp * g_pq + akq * g_qq;
  }
  // A <- G^dag A
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = std::conj(g_pp) * apk + std::conj(g_qp) * aqk;
    a(q, k) = std::conj(g_pq) * apk + std::conj(g_qq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();
  // V <- V G
  for (std::size_t k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * g_pp + vkq * g_qp;
    v(k, q) = vkp * g_pq + vkq * g_qq;
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
  if (dim == 0) throw DomainError("ComplexMatrix: dimension must be at least 1");
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), data_(std::move(entries)) {
  if (dim == 0) throw DomainError("ComplexMatrix: dimension must be at least 1");
  if (data_.size() != dim * dim) {
    throw DomainError("ComplexMatrix: expected " + std::to_string(dim * dim) + " entries, got " +
                      std::to_string(data_.size()));
  }
  if (!is_finite()) throw DomainError("ComplexMatrix: non-finite entry");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()) {
  if (dim_ == 0) throw DomainError("ComplexMatrix: dimension must be at least 1");
  data_.reserve(dim_ * dim_);
  for (const auto& row : rows) {
    if (row.size() != dim_) throw DomainError("ComplexMatrix: rows must form a square matrix");
    data_.insert(data_.end(), row.begin(), row.end());
  }
  if (!is_finite()) throw DomainError("ComplexMatrix: non-finite entry");
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix out(dim);
  for (std::size_t i = 0; i < dim; ++i) out(i, i) = 1.0;
  return out;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out(i, i) = values[i];
  return out;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> values) {
  return diagonal(std::span<const double>(values.begin(), values.size()));
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_dim(*this, other, "add");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_dim(*this, other, "sub");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex factor) {
  for (auto& z : data_) z *= factor;
  return *this;
}

bool ComplexMatrix::is_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

Complex ComplexMatrix::trace() const {
  Complex acc = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) acc += (*this)(i, i);
  return acc;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator-(ComplexMatrix a) { return a *= -1.0; }
ComplexMatrix operator*(ComplexMatrix a, Complex factor) { return a *= factor; }
ComplexMatrix operator*(Complex factor, ComplexMatrix a) { return a *= factor; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "mul");
  const std::size_t n = a.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) { return a + b; }
ComplexMatrix sub(const ComplexMatrix& a, const ComplexMatrix& b) { return a - b; }
ComplexMatrix mul(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b; }
ComplexMatrix scale(const ComplexMatrix& a, Complex factor) { return a * factor; }

ComplexMatrix adjoint(const ComplexMatrix& a) {
  const std::size_t n = a.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(j, i) = std::conj(a(i, j));
  return out;
}

ComplexMatrix commutator(const ComplexMatrix& x, const ComplexMatrix& y) {
  require_same_dim(x, y, "commutator");
  return x * y - y * x;
}

double hs_norm_sq(const ComplexMatrix& x) {
  double acc = 0.0;
  for (const auto& z : x.entries()) acc += std::norm(z);
  return acc;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "max_abs_diff");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.entries().size(); ++k)
    worst = std::max(worst, std::abs(a.entries()[k] - b.entries()[k]));
  return worst;
}

double hermitian_asymmetry(const ComplexMatrix& x) {
  double worst = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i)
    for (std::size_t j = i; j < x.dim(); ++j)
      worst = std::max(worst, std::abs(x(i, j) - std::conj(x(j, i))));
  return worst;
}

ComplexMatrix pauli(int axis) {
  const Complex i{0.0, 1.0};
  switch (axis) {
    case 1: return {{0.0, 1.0}, {1.0, 0.0}};
    case 2: return {{0.0, -i}, {i, 0.0}};
    case 3: return {{1.0, 0.0}, {0.0, -1.0}};
    default: throw DomainError("pauli: axis must be 1, 2 or 3, got " + std::to_string(axis));
  }
}

EigenDecomposition eig_hermitian(const ComplexMatrix& x) {
  const double asym = hermitian_asymmetry(x);
  if (asym > kHermitianTolerance) {
    throw NotHermitianError("eig_hermitian: input is not Hermitian (max asymmetry " +
                            std::to_string(asym) + ")");
  }
  const std::size_t n = x.dim();
  ComplexMatrix a = (x + adjoint(x)) * 0.5;
  ComplexMatrix v = ComplexMatrix::identity(n);

  constexpr int kMaxSweeps = 100;
  const double threshold = 1e-13 * frobenius(x);
  bool converged = off_diagonal_norm(a) <= threshold;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
    converged = off_diagonal_norm(a) <= threshold;
  }
  if (!converged) {
    throw ConvergenceError("eig_hermitian: no convergence after " + std::to_string(kMaxSweeps) +
                           " sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    return a(l, l).real() > a(r, r).real();
  });

  EigenDecomposition out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

ComplexMatrix matrix_power(const EigenDecomposition& eig, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("matrix_power: exponent must lie in [0, 1], got " + std::to_string(p));
  }
  for (double lambda : eig.eigenvalues) {
    if (lambda < -kPsdTolerance) {
      throw NotPositiveSemidefiniteError("matrix_power: not positive semidefinite (eigenvalue " +
                                         std::to_string(lambda) + ")");
    }
  }
  if (p == 0.0) return ComplexMatrix::identity(eig.eigenvectors.dim());
  return spectral_apply(eig, [p](double lambda) { return lambda <= 0.0 ? 0.0 : std::pow(lambda, p); });
}

ComplexMatrix matrix_power(const ComplexMatrix& psd, double p) {
  return matrix_power(eig_hermitian(psd), p);
}

}  // namespace mwwyd
