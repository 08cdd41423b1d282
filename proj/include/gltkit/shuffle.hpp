#pragma once

// Permutations in one-line notation and the Kronecker-reordering permutations
// built from them: the perfect shuffle P_{n1,n2}, the recursive Gamma(sigma),
// and the interleaving Pi.
//
// Convention (the usual source of transpose bugs): a permutation zeta is the
// matrix whose i-th row is e_{zeta(i)}^T, so (P v)_i = v_{zeta(i)} and
// (P A Q^T)_{ij} = A_{zeta_P(i), zeta_Q(j)}. All positions are 1-based.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gltkit/densela.hpp"

namespace gltkit {

class Permutation {
 public:
  Permutation() = default;
  /// Throws DomainError unless one_line is a bijection of {1,...,N}.
  explicit Permutation(std::vector<std::size_t> one_line);

  static Permutation identity(std::size_t n);

  std::size_t size() const noexcept { return zeta_.size(); }
  /// zeta(i), 1-based in and out.
  std::size_t operator()(std::size_t i) const { return zeta_[i - 1]; }
  std::span<const std::size_t> one_line() const noexcept { return zeta_; }
  bool is_identity() const noexcept;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> zeta_;
};

/// Matrix product P Q: one-line i -> zeta_Q(zeta_P(i)).
Permutation compose(const Permutation& p, const Permutation& q);
/// P^T = P^{-1}.
Permutation invert(const Permutation& p);
/// P (x) Q as a permutation of the lexicographic pairs.
Permutation kron(const Permutation& p, const Permutation& q);

/// Perfect shuffle: zeta(i) = ((i-1) mod n1) n2 + floor((i-1)/n1) + 1.
Permutation p_shuffle(std::size_t n1, std::size_t n2);

/// Gamma_{n_1..n_d}(sigma): the permutation with
/// X_{sigma(1)} (x) ... (x) X_{sigma(d)} = Gamma (X_1 (x) ... (x) X_d) Gamma^T.
/// sigma is given in one-line notation on {1,...,d}.
Permutation gamma(std::span<const std::size_t> sizes, const Permutation& sigma);

/// Pi_{p_1..p_d}^{q_1..q_d} = Gamma_{p,q}([1, d+1, 2, d+2, ..., d, 2d]).
Permutation pi(std::span<const std::size_t> ps, std::span<const std::size_t> qs);

/// The interleaving sigma = [1, d+1, 2, d+2, ..., d, 2d].
Permutation interleave_sigma(std::size_t d);

std::vector<Complex> apply(const Permutation& p, std::span<const Complex> v);
/// P A, by reindexing rows.
ComplexMatrix apply_rows(const Permutation& p, const ComplexMatrix& a);
/// P A Q^T, by reindexing; no floating-point arithmetic.
ComplexMatrix conjugate(const Permutation& p, const ComplexMatrix& a, const Permutation& q);

ComplexMatrix to_matrix(const Permutation& p);

/// "1,4,2,5,3,6"
std::string to_string(const Permutation& p);

/// Result of an exhaustive search over all permutations of size N = prod(sizes).
struct GammaSearchResult {
  std::size_t candidates = 0;  // N!
  std::size_t matches = 0;
  std::vector<Permutation> solutions;
  bool unique_and_equals_gamma = false;
};

/// Enumerates every permutation Gamma of size N <= 8 and keeps those with
/// X_{sigma(1)} (x) ... (x) X_{sigma(d)} = Gamma (X_1 (x) ... (x) X_d) Gamma^T for
/// every canonical tensor basis matrix X_r = E^{(n_r)}_{u_r v_r}.
GammaSearchResult search_gamma(std::span<const std::size_t> sizes, const Permutation& sigma);

/// Permutations of size N <= 8 commuting with every E^{(N)}_{uv} (only the identity).
std::vector<Permutation> search_commuting(std::size_t n);

}  // namespace gltkit
