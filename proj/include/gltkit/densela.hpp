#pragma once

// Dense complex matrices and the handful of kernels the rest of the library
// needs: Kronecker products, direct sums, Hermitian eigenvalues, singular
// values.
//
// Element access is 0-based (row, col); the 1-based multi-index layout lives
// in multiindex.hpp and is applied by the builders, not by this class.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace gltkit {

using Complex = std::complex<double>;

/// Matrices with more rows or columns than this are rejected.
inline constexpr std::size_t kMaxDenseDim = 5000;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  /// rows x cols zero matrix.
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const Complex> d);
  static ComplexMatrix diagonal(std::span<const double> d);
  /// E_uv of size n x n, 1-based (u, v).
  static ComplexMatrix unit(std::size_t n, std::size_t u, std::size_t v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Complex> data() noexcept { return data_; }
  std::span<const Complex> data() const noexcept { return data_; }
  std::span<const Complex> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  ComplexMatrix transpose() const;
  ComplexMatrix adjoint() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex alpha);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(Complex alpha, ComplexMatrix a) { return a *= alpha; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

  /// Every imaginary part is exactly zero.
  bool is_real() const noexcept;
  /// max |A - A^*| <= rel_tol * max(1, max |A|).
  bool is_hermitian(double rel_tol = 1e-12) const;

  double frobenius_norm() const noexcept;
  double max_abs() const noexcept;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// max_ij |A_ij - B_ij|; throws DomainError on a shape mismatch.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Row i of the result is d[i] times row i of a.
ComplexMatrix scale_rows(std::span<const Complex> d, const ComplexMatrix& a);

ComplexMatrix kron(const ComplexMatrix& x, const ComplexMatrix& y);
/// Left fold of kron; throws DomainError on an empty list.
ComplexMatrix kron_all(std::span<const ComplexMatrix> xs);
ComplexMatrix direct_sum(const ComplexMatrix& x, const ComplexMatrix& y);

/// Eigenvalues of a Hermitian matrix, ascending. Throws DomainError when the
/// input is not Hermitian to 1e-12 relative.
std::vector<double> eigh(const ComplexMatrix& a);

struct HermitianEigen {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column k belongs to values[k]
};
HermitianEigen eigh_vectors(const ComplexMatrix& a);

/// Cyclic Jacobi rotations: stops when the off-diagonal Frobenius mass drops
/// below 1e-13 * ||A||_F, or after 40 sweeps. Slow but dependency-free.
std::vector<double> eigh_jacobi(const ComplexMatrix& a);

/// min(rows, cols) singular values, descending, from the Gram matrix.
std::vector<double> svd_values(const ComplexMatrix& a);

/// Spectral norm.
double norm2(const ComplexMatrix& a);

/// #{sigma_i > rel_tol * sigma_max}, from a bidiagonal SVD (accurate to rounding,
/// unlike svd_values).
std::size_t numerical_rank(const ComplexMatrix& a, double rel_tol = 1e-9);

/// A^* A when rows >= cols, otherwise A A^*; exactly Hermitian.
ComplexMatrix gram(const ComplexMatrix& a);

}  // namespace gltkit
