#pragma once

// B-spline Galerkin matrices for -u'' = f on (0,1)^d with homogeneous
// Dirichlet conditions: uniform knots i/m, degree p, and the m + p - 2 basis
// functions that vanish at both ends.
//
// Normalisation: the stiffness matrix K is scaled by 1/m and the mass matrix
// M by m. Then the interior rows do not depend on m and read off the
// trigonometric polynomials f_p (from K) and h_p (from M). For isotropic
// meshes the normalised d-dimensional matrix is m^{d-2} times the raw one.

#include <cstddef>
#include <vector>

#include "gltkit/asymptotics.hpp"
#include "gltkit/densela.hpp"
#include "gltkit/multiindex.hpp"
#include "gltkit/symbols.hpp"

namespace gltkit {

inline constexpr std::size_t kMaxSplineDegree = 4;

class BSplineBasis {
 public:
  /// Throws DomainError unless 1 <= p <= kMaxSplineDegree and m >= p.
  BSplineBasis(std::size_t p, std::size_t m);

  std::size_t degree() const noexcept { return p_; }
  std::size_t intervals() const noexcept { return m_; }
  /// m + p - 2.
  std::size_t dimension() const noexcept { return m_ + p_ - 2; }

  /// B_{j+1,p,m}(x) (deriv = 0) or its derivative (deriv = 1), j = 1..dimension().
  double eval(std::size_t j, double x, int deriv = 0) const;
  /// Full open-knot basis B_{1..m+p}, including the two boundary functions.
  double eval_full(std::size_t k, double x, int deriv = 0) const;

 private:
  std::size_t p_;
  std::size_t m_;
  std::vector<double> knots_;  // open knot vector, p+1 repeated ends
};

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(std::size_t count, std::vector<double>& nodes, std::vector<double>& weights);

/// Raw Galerkin matrices: K_ij = int B'_{j+1} B'_{i+1}, M_ij = int B_{j+1} B_{i+1}.
ComplexMatrix stiffness(std::size_t m, std::size_t p);
ComplexMatrix mass(std::size_t m, std::size_t p);

/// f_p: the interior stencil of (1/m) K. h_p: the interior stencil of m M.
TrigPoly symbol_fp(std::size_t p);
TrigPoly symbol_hp(std::size_t p);

/// sum_r (x)_{l} F_l with F_r = K^{(p_r)}_{m_r} and F_l = M^{(p_l)}_{m_l} otherwise;
/// normalised: (1/m_r) K and m_l M.
ComplexMatrix poisson_matrix(const MultiIndex& ms, const MultiIndex& ps, bool normalized);

/// sum_r h_{p_1} (x) ... (x) f_{p_r} (x) ... (x) h_{p_d}.
GltSymbol poisson_symbol(const MultiIndex& ps);

struct PoissonReport {
  DistributionReport sv;
  DistributionReport eig;
  bool hermitian = true;  // every scheduled matrix passed the Hermitian check
  bool pass = false;
};

/// Normalised family on isotropic meshes (m, ..., m), m in sizes; both modes.
/// Report rows are indexed by the matrix level sizes m + p_r - 2.
PoissonReport verify_poisson(const MultiIndex& ps, std::span<const std::size_t> sizes,
                             double tol);

}  // namespace gltkit
