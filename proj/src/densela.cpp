#include "gltkit/densela.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "gltkit/error.hpp"

namespace gltkit {

namespace {

void check_dims(std::size_t rows, std::size_t cols) {
  if (rows > kMaxDenseDim || cols > kMaxDenseDim)
    throw ResourceError("dense matrix " + std::to_string(rows) + "x" + std::to_string(cols) +
                        " exceeds the " + std::to_string(kMaxDenseDim) + " limit");
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DomainError(std::string(what) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                      std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                      std::to_string(b.cols()));
}

using RealMap = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexMap = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const ComplexMap> view(const ComplexMatrix& a) {
  return {a.data().data(), static_cast<Eigen::Index>(a.rows()), static_cast<Eigen::Index>(a.cols())};
}

RealMap real_copy(const ComplexMatrix& a) {
  return view(a).real();
}

template <class Solver>
void collect(const Solver& solver, std::size_t n, bool want_vectors, HermitianEigen& out) {
  if (solver.info() != Eigen::Success) throw DomainError("eigh: eigensolver did not converge");
  const auto& w = solver.eigenvalues();
  for (std::size_t k = 0; k < n; ++k) out.values[k] = w(static_cast<Eigen::Index>(k));
  if (want_vectors) {
    out.vectors = ComplexMatrix(n, n);
    const auto& v = solver.eigenvectors();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        out.vectors(i, k) = v(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
  }
}

// Eigen's self-adjoint solver reads the lower triangle; values come back ascending.
HermitianEigen hermitian_eigen(const ComplexMatrix& a, bool want_vectors) {
  const std::size_t n = a.rows();
  HermitianEigen out;
  out.values.resize(n);
  if (n == 0) return out;
  const int options = want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly;
  if (a.is_real()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(real_copy(a), options);
    collect(solver, n, want_vectors, out);
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(Eigen::MatrixXcd(view(a)), options);
    collect(solver, n, want_vectors, out);
  }
  return out;
}

void require_hermitian(const ComplexMatrix& a, const char* what) {
  if (!a.is_square()) throw DomainError(std::string(what) + ": matrix is not square");
  if (!a.is_hermitian(1e-12)) throw DomainError(std::string(what) + ": matrix is not Hermitian");
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
  check_dims(rows, cols);
  data_.assign(rows * cols, Complex{});
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  check_dims(rows_, cols_);
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DomainError("ComplexMatrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
  return out;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> d) {
  ComplexMatrix out(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out(i, i) = d[i];
  return out;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> d) {
  ComplexMatrix out(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out(i, i) = d[i];
  return out;
}

ComplexMatrix ComplexMatrix::unit(std::size_t n, std::size_t u, std::size_t v) {
  if (u < 1 || u > n || v < 1 || v > n) throw DomainError("unit: position outside 1..n");
  ComplexMatrix out(n, n);
  out(u - 1, v - 1) = 1.0;
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator+");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator-");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex alpha) {
  for (auto& v : data_) v *= alpha;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows())
    throw DomainError("operator*: inner dimensions " + std::to_string(a.cols()) + " and " +
                      std::to_string(b.rows()) + " differ");
  ComplexMatrix out(a.rows(), b.cols());
  if (out.size() == 0 || a.cols() == 0) return out;
  if (a.is_real() && b.is_real()) {
    const RealMap c = real_copy(a) * real_copy(b);
    auto d = out.data();
    for (std::size_t q = 0; q < d.size(); ++q) d[q] = c.data()[q];
    return out;
  }
  Eigen::Map<ComplexMap>(out.data().data(), static_cast<Eigen::Index>(out.rows()),
                         static_cast<Eigen::Index>(out.cols())) = view(a) * view(b);
  return out;
}

bool ComplexMatrix::is_real() const noexcept {
  for (const auto& v : data_)
    if (v.imag() != 0.0) return false;
  return true;
}

bool ComplexMatrix::is_hermitian(double rel_tol) const {
  if (!is_square()) return false;
  const double scale = std::max(1.0, max_abs());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > rel_tol * scale) return false;
  return true;
}

double ComplexMatrix::frobenius_norm() const noexcept {
  double s = 0;
  for (const auto& v : data_) s += std::norm(v);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const noexcept {
  double m = 0;
  for (const auto& v : data_) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0;
  auto da = a.data(), db = b.data();
  for (std::size_t k = 0; k < da.size(); ++k) m = std::max(m, std::abs(da[k] - db[k]));
  return m;
}

ComplexMatrix scale_rows(std::span<const Complex> d, const ComplexMatrix& a) {
  if (d.size() != a.rows()) throw DomainError("scale_rows: diagonal length mismatch");
  ComplexMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) *= d[i];
  return out;
}

ComplexMatrix kron(const ComplexMatrix& x, const ComplexMatrix& y) {
  const std::size_t rows = x.rows() * y.rows();
  const std::size_t cols = x.cols() * y.cols();
  if ((x.rows() && rows / x.rows() != y.rows()) || (x.cols() && cols / x.cols() != y.cols()))
    throw ResourceError("kron: size overflow");
  ComplexMatrix out(rows, cols);
  for (std::size_t i1 = 0; i1 < x.rows(); ++i1)
    for (std::size_t j1 = 0; j1 < x.cols(); ++j1) {
      const Complex xv = x(i1, j1);
      if (xv == Complex{}) continue;
      for (std::size_t i2 = 0; i2 < y.rows(); ++i2)
        for (std::size_t j2 = 0; j2 < y.cols(); ++j2)
          out(i1 * y.rows() + i2, j1 * y.cols() + j2) = xv * y(i2, j2);
    }
  return out;
}

ComplexMatrix kron_all(std::span<const ComplexMatrix> xs) {
  if (xs.empty()) throw DomainError("kron_all: empty list");
  ComplexMatrix acc = xs.front();
  for (std::size_t k = 1; k < xs.size(); ++k) acc = kron(acc, xs[k]);
  return acc;
}

ComplexMatrix direct_sum(const ComplexMatrix& x, const ComplexMatrix& y) {
  ComplexMatrix out(x.rows() + y.rows(), x.cols() + y.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) out(i, j) = x(i, j);
  for (std::size_t i = 0; i < y.rows(); ++i)
    for (std::size_t j = 0; j < y.cols(); ++j) out(x.rows() + i, x.cols() + j) = y(i, j);
  return out;
}

std::vector<double> eigh(const ComplexMatrix& a) {
  require_hermitian(a, "eigh");
  return hermitian_eigen(a, false).values;
}

HermitianEigen eigh_vectors(const ComplexMatrix& a) {
  require_hermitian(a, "eigh_vectors");
  return hermitian_eigen(a, true);
}

ComplexMatrix gram(const ComplexMatrix& a) {
  const bool tall = a.rows() >= a.cols();
  const std::size_t n = tall ? a.cols() : a.rows();
  ComplexMatrix g(n, n);
  if (n == 0 || a.size() == 0) return g;
  // rankUpdate(u) adds u u^*: u = A^* gives A^* A, u = A gives A A^*.
  if (a.is_real()) {
    const RealMap ar = real_copy(a);
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    if (tall)
      acc.selfadjointView<Eigen::Lower>().rankUpdate(ar.transpose());
    else
      acc.selfadjointView<Eigen::Lower>().rankUpdate(ar);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        const double v = acc(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        g(i, j) = v;
        g(j, i) = v;
      }
    return g;
  }
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  if (tall)
    acc.selfadjointView<Eigen::Lower>().rankUpdate(view(a).adjoint());
  else
    acc.selfadjointView<Eigen::Lower>().rankUpdate(view(a));
  for (std::size_t i = 0; i < n; ++i) {
    g(i, i) = acc(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
    for (std::size_t j = 0; j < i; ++j) {
      const Complex v = acc(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      g(i, j) = v;
      g(j, i) = std::conj(v);
    }
  }
  return g;
}

std::vector<double> svd_values(const ComplexMatrix& a) {
  std::vector<double> lam = hermitian_eigen(gram(a), false).values;
  std::vector<double> s(lam.size());
  for (std::size_t k = 0; k < lam.size(); ++k)
    s[k] = std::sqrt(std::max(lam[lam.size() - 1 - k], 0.0));
  return s;
}

double norm2(const ComplexMatrix& a) {
  auto s = svd_values(a);
  return s.empty() ? 0.0 : s.front();
}

std::size_t numerical_rank(const ComplexMatrix& a, double rel_tol) {
  // The Gram route bottoms out near 1e-8 relative, too coarse for a 1e-9 cut;
  // rank decisions use a bidiagonal SVD of A itself.
  if (a.size() == 0) return 0;
  std::vector<double> s;
  if (a.is_real()) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(real_copy(a));
    s.assign(svd.singularValues().data(), svd.singularValues().data() + svd.singularValues().size());
  } else {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd{Eigen::MatrixXcd(view(a))};
    s.assign(svd.singularValues().data(), svd.singularValues().data() + svd.singularValues().size());
  }
  if (s.empty() || s.front() == 0.0) return 0;
  const double cut = rel_tol * s.front();
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [cut](double v) { return v > cut; }));
}

}  // namespace gltkit
