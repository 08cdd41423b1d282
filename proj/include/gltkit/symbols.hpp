#pragma once

// The functional side: trigonometric polynomials f(theta) with s x t matrix
// coefficients, and separable GLT symbols kappa(x, theta) = sum_i a_i(x) f_i(theta).
//
// Separable finite sums are this library's representation of a symbol; any
// other kappa is reached only as a limit of such sums.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gltkit/densela.hpp"
#include "gltkit/expr.hpp"
#include "gltkit/multiindex.hpp"

namespace gltkit {

class TrigPoly {
 public:
  /// The zero polynomial on `levels` levels with s x t blocks.
  TrigPoly(std::size_t levels = 1, std::size_t s = 1, std::size_t t = 1);

  /// Scalar polynomial from (frequency, coefficient) pairs; repeated
  /// frequencies accumulate.
  static TrigPoly scalar(std::size_t levels, std::span<const std::pair<MultiIndex, Complex>> terms);
  static TrigPoly scalar(std::size_t levels,
                         std::initializer_list<std::pair<MultiIndex, Complex>> terms) {
    return scalar(levels, std::span<const std::pair<MultiIndex, Complex>>(terms.begin(), terms.size()));
  }
  /// The constant block c on `levels` levels.
  static TrigPoly constant(std::size_t levels, const ComplexMatrix& c);
  /// The scalar 1.
  static TrigPoly one(std::size_t levels) { return constant(levels, ComplexMatrix::identity(1)); }
  /// exp(i k.theta).
  static TrigPoly monomial(const MultiIndex& k);
  /// 2 - 2cos(theta) on one level.
  static TrigPoly laplacian();

  std::size_t levels() const noexcept { return levels_; }
  std::size_t block_rows() const noexcept { return s_; }
  std::size_t block_cols() const noexcept { return t_; }
  const std::map<MultiIndex, ComplexMatrix>& coeffs() const noexcept { return coeffs_; }

  /// f_k, or the zero block outside the stored support.
  ComplexMatrix coeff(const MultiIndex& k) const;
  /// Pointer to the stored block, or nullptr.
  const ComplexMatrix* find(const MultiIndex& k) const;

  void set(const MultiIndex& k, ComplexMatrix block);
  void add_to(const MultiIndex& k, const ComplexMatrix& block);

  /// Componentwise max |k_r| over the support (zeros when empty).
  MultiIndex bandwidth() const;

  /// sum_k f_k exp(i k.theta).
  ComplexMatrix eval(std::span<const double> theta) const;

  /// f_{-k} = f_k^* for every k, to max-abs tolerance tol.
  bool has_hermitian_symmetry(double tol = 0.0) const;

  TrigPoly scaled(Complex alpha) const;

 private:
  void check_key(const MultiIndex& k) const;
  void check_block(const ComplexMatrix& b) const;

  std::size_t levels_;
  std::size_t s_;
  std::size_t t_;
  std::map<MultiIndex, ComplexMatrix> coeffs_;
};

TrigPoly trig_add(const TrigPoly& f, const TrigPoly& g);
/// Pointwise block product f(theta) g(theta): coefficient convolution.
TrigPoly trig_mul(const TrigPoly& f, const TrigPoly& g);
/// (f1 (x) f2)(theta1, theta2) = f1(theta1) (x) f2(theta2); coefficients are kron'd.
TrigPoly tp_trig(const TrigPoly& f1, const TrigPoly& f2);

using MatrixFunction = std::function<ComplexMatrix(std::span<const double>)>;

/// (2 pi)^-d times the integral of g(theta) exp(-i k.theta) over [-pi,pi]^d by
/// the periodic trapezoid rule on nodes -pi + 2 pi j / N. Exact (up to
/// rounding) for trigonometric polynomials of bandwidth < N/2.
ComplexMatrix fourier_coeff_numeric(const MatrixFunction& g, const MultiIndex& k,
                                    std::size_t nodes_per_dim);

/// Truncated Fourier series: every coefficient with |k_r| <= bandwidth,
/// computed by fourier_coeff_numeric. Coefficients below drop_tol are omitted.
TrigPoly fourier_truncate(const MatrixFunction& g, std::size_t levels, std::size_t bandwidth,
                          std::size_t nodes_per_dim, double drop_tol = 0.0);

struct SymbolTerm {
  CoeffFn a;
  TrigPoly f;
};

class GltSymbol {
 public:
  /// The zero symbol (no terms).
  GltSymbol(std::size_t levels = 1, std::size_t s = 1, std::size_t t = 1);

  /// kappa(x, theta) = f(theta).
  static GltSymbol from_trig(TrigPoly f);
  /// kappa(x, theta) = a(x) I_s.
  static GltSymbol from_coeff(CoeffFn a, std::size_t s = 1);
  static GltSymbol single(CoeffFn a, TrigPoly f);

  void add_term(CoeffFn a, TrigPoly f);

  std::size_t levels() const noexcept { return levels_; }
  std::size_t block_rows() const noexcept { return s_; }
  std::size_t block_cols() const noexcept { return t_; }
  const std::vector<SymbolTerm>& terms() const noexcept { return terms_; }

  /// nullopt when some a_i is undefined at x.
  std::optional<ComplexMatrix> try_eval(std::span<const double> x,
                                        std::span<const double> theta) const;
  /// Throws DomainError when some a_i is undefined at x.
  ComplexMatrix eval(std::span<const double> x, std::span<const double> theta) const;

  /// Every a_i is constant, so kappa depends on theta only.
  bool is_x_independent() const noexcept;
  /// Square blocks and every f_i has Hermitian coefficient symmetry; the
  /// a_i are real by construction, so kappa is Hermitian everywhere.
  bool is_hermitian() const;

 private:
  std::size_t levels_;
  std::size_t s_;
  std::size_t t_;
  std::vector<SymbolTerm> terms_;
};

GltSymbol symbol_add(const GltSymbol& k1, const GltSymbol& k2);
GltSymbol symbol_scale(Complex alpha, const GltSymbol& k);
GltSymbol symbol_mul(const GltSymbol& k1, const GltSymbol& k2);
/// Bilinear expansion: terms (a_i (x) a'_j, f_i (x) f'_j).
GltSymbol symbol_tensor(const GltSymbol& k1, const GltSymbol& k2);
/// Left fold of symbol_tensor; throws DomainError on an empty list.
GltSymbol symbol_tensor_all(std::span<const GltSymbol> ks);

}  // namespace gltkit
