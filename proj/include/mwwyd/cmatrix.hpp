#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace mwwyd {

using Complex = std::complex<double>;

// Dense square complex matrix, row-major storage.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  // dim x dim zero matrix.
  explicit ComplexMatrix(std::size_t dim);
  // Takes ownership of dim*dim row-major entries. Throws DomainError on a
  // size mismatch or a non-finite entry.
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix zero(std::size_t dim) { return ComplexMatrix(dim); }
  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> values);
  static ComplexMatrix diagonal(std::initializer_list<double> values);

  std::size_t dim() const { return dim_; }
  Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return data_[row * dim_ + col];
  }
  std::span<const Complex> entries() const { return data_; }

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex factor);

  bool is_finite() const;
  Complex trace() const;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(ComplexMatrix a, Complex factor);
ComplexMatrix operator*(Complex factor, ComplexMatrix a);

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix sub(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix mul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix scale(const ComplexMatrix& a, Complex factor);
ComplexMatrix adjoint(const ComplexMatrix& a);

// xy - yx
ComplexMatrix commutator(const ComplexMatrix& x, const ComplexMatrix& y);

// Tr(x^dag x), the squared Hilbert-Schmidt norm.
double hs_norm_sq(const ComplexMatrix& x);

// max_ij |a_ij - b_ij|
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// max_ij |x_ij - conj(x_ji)|
double hermitian_asymmetry(const ComplexMatrix& x);

// Pauli matrices in the standard representation, |0> = (1,0)^T.
ComplexMatrix pauli(int axis);

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kPsdTolerance = 1e-10;

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // descending
  ComplexMatrix eigenvectors;       // column k belongs to eigenvalues[k]
};

// Cyclic-by-row Jacobi diagonalization of a Hermitian matrix.
// Throws NotHermitianError when the input deviates from its adjoint by more
// than kHermitianTolerance, ConvergenceError after 100 sweeps without
// reaching an off-diagonal norm of 1e-13 times the input norm.
EigenDecomposition eig_hermitian(const ComplexMatrix& x);

// V diag(f(lambda_k)) V^dag for a decomposition.
template <typename Fn>
ComplexMatrix spectral_apply(const EigenDecomposition& eig, Fn&& fn) {
  const std::size_t n = eig.eigenvectors.dim();
  ComplexMatrix out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double f = fn(eig.eigenvalues[k]);
    if (f == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vik = eig.eigenvectors(i, k) * f;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(eig.eigenvectors(j, k));
    }
  }
  return out;
}

// rho^p for a positive semidefinite decomposition, p in [0, 1]. p == 0
// yields the exact identity. Eigenvalues in [-kPsdTolerance, 0) are treated
// as zero; anything more negative throws NotPositiveSemidefiniteError.
ComplexMatrix matrix_power(const EigenDecomposition& eig, double p);
ComplexMatrix matrix_power(const ComplexMatrix& psd, double p);

}  // namespace mwwyd
