#include "gltkit/shuffle.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <string>

#include "gltkit/error.hpp"
#include "gltkit/multiindex.hpp"

namespace gltkit {

namespace {

std::size_t product(std::span<const std::size_t> xs, std::size_t from, std::size_t to) {
  std::size_t p = 1;
  for (std::size_t k = from; k < to; ++k) p *= xs[k];
  return p;
}

void require_positive(std::span<const std::size_t> sizes, const char* what) {
  for (auto s : sizes)
    if (s < 1) throw DomainError(std::string(what) + ": sizes must be >= 1");
}

}  // namespace

Permutation::Permutation(std::vector<std::size_t> one_line) : zeta_(std::move(one_line)) {
  std::vector<bool> seen(zeta_.size() + 1, false);
  for (auto z : zeta_) {
    if (z < 1 || z > zeta_.size() || seen[z])
      throw DomainError("Permutation: one-line form is not a bijection of {1,...," +
                        std::to_string(zeta_.size()) + "}");
    seen[z] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> z(n);
  std::iota(z.begin(), z.end(), std::size_t{1});
  return Permutation(std::move(z));
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < zeta_.size(); ++i)
    if (zeta_[i] != i + 1) return false;
  return true;
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size()) throw DomainError("compose: size mismatch");
  std::vector<std::size_t> z(p.size());
  for (std::size_t i = 1; i <= p.size(); ++i) z[i - 1] = q(p(i));
  return Permutation(std::move(z));
}

Permutation invert(const Permutation& p) {
  std::vector<std::size_t> z(p.size());
  for (std::size_t i = 1; i <= p.size(); ++i) z[p(i) - 1] = i;
  return Permutation(std::move(z));
}

Permutation kron(const Permutation& p, const Permutation& q) {
  const std::size_t nq = q.size();
  std::vector<std::size_t> z(p.size() * nq);
  for (std::size_t i1 = 1; i1 <= p.size(); ++i1)
    for (std::size_t i2 = 1; i2 <= nq; ++i2) z[(i1 - 1) * nq + i2 - 1] = (p(i1) - 1) * nq + q(i2);
  return Permutation(std::move(z));
}

Permutation p_shuffle(std::size_t n1, std::size_t n2) {
  if (n1 < 1 || n2 < 1) throw DomainError("p_shuffle: sizes must be >= 1");
  std::vector<std::size_t> z(n1 * n2);
  for (std::size_t i = 1; i <= n1 * n2; ++i) z[i - 1] = ((i - 1) % n1) * n2 + (i - 1) / n1 + 1;
  return Permutation(std::move(z));
}

Permutation gamma(std::span<const std::size_t> sizes, const Permutation& sigma) {
  const std::size_t d = sizes.size();
  if (d == 0) throw DomainError("gamma: no sizes");
  if (sigma.size() != d)
    throw DomainError("gamma: sigma has " + std::to_string(sigma.size()) + " entries for " +
                      std::to_string(d) + " sizes");
  require_positive(sizes, "gamma");
  if (d == 1) return Permutation::identity(sizes[0]);
  if (d == 2)
    return sigma.is_identity() ? Permutation::identity(sizes[0] * sizes[1])
                               : p_shuffle(sizes[0], sizes[1]);

  // i: position holding d; tau: sigma with d removed.
  std::size_t i = 1;
  while (sigma(i) != d) ++i;
  std::vector<std::size_t> tau;
  tau.reserve(d - 1);
  for (std::size_t k = 1; k <= d; ++k)
    if (k != i) tau.push_back(sigma(k));

  std::size_t before = 1, after = 1;
  for (std::size_t k = 1; k < i; ++k) before *= sizes[sigma(k) - 1];
  for (std::size_t k = i + 1; k <= d; ++k) after *= sizes[sigma(k) - 1];
  const std::size_t nd = sizes[d - 1];

  const Permutation left = kron(Permutation::identity(before), p_shuffle(after, nd));
  const Permutation right =
      kron(gamma(sizes.first(d - 1), Permutation(std::move(tau))), Permutation::identity(nd));
  return compose(left, right);
}

Permutation interleave_sigma(std::size_t d) {
  std::vector<std::size_t> s;
  s.reserve(2 * d);
  for (std::size_t k = 1; k <= d; ++k) {
    s.push_back(k);
    s.push_back(d + k);
  }
  return Permutation(std::move(s));
}

Permutation pi(std::span<const std::size_t> ps, std::span<const std::size_t> qs) {
  if (ps.size() != qs.size())
    throw DomainError("pi: " + std::to_string(ps.size()) + " block counts vs " +
                      std::to_string(qs.size()) + " block sizes");
  if (ps.empty()) throw DomainError("pi: empty size lists");
  std::vector<std::size_t> sizes(ps.begin(), ps.end());
  sizes.insert(sizes.end(), qs.begin(), qs.end());
  return gamma(sizes, interleave_sigma(ps.size()));
}

std::vector<Complex> apply(const Permutation& p, std::span<const Complex> v) {
  if (v.size() != p.size()) throw DomainError("apply: size mismatch");
  std::vector<Complex> out(v.size());
  for (std::size_t i = 1; i <= p.size(); ++i) out[i - 1] = v[p(i) - 1];
  return out;
}

ComplexMatrix apply_rows(const Permutation& p, const ComplexMatrix& a) {
  if (a.rows() != p.size()) throw DomainError("apply_rows: size mismatch");
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 1; i <= p.size(); ++i) {
    auto src = a.row(p(i) - 1);
    std::copy(src.begin(), src.end(), out.data().begin() + static_cast<std::ptrdiff_t>((i - 1) * a.cols()));
  }
  return out;
}

ComplexMatrix conjugate(const Permutation& p, const ComplexMatrix& a, const Permutation& q) {
  if (a.rows() != p.size() || a.cols() != q.size())
    throw DomainError("conjugate: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                      " matrix with permutations of size " + std::to_string(p.size()) + ", " +
                      std::to_string(q.size()));
  ComplexMatrix out(a.rows(), a.cols());
  for (std::size_t i = 1; i <= p.size(); ++i) {
    const std::size_t src = p(i) - 1;
    for (std::size_t j = 1; j <= q.size(); ++j) out(i - 1, j - 1) = a(src, q(j) - 1);
  }
  return out;
}

ComplexMatrix to_matrix(const Permutation& p) {
  ComplexMatrix out(p.size(), p.size());
  for (std::size_t i = 1; i <= p.size(); ++i) out(i - 1, p(i) - 1) = 1.0;
  return out;
}

std::string to_string(const Permutation& p) {
  std::ostringstream os;
  for (std::size_t i = 1; i <= p.size(); ++i) os << (i > 1 ? "," : "") << p(i);
  return os.str();
}

namespace {

// Position (0-based row, col) of the single unit entry of a canonical basis matrix.
std::pair<std::size_t, std::size_t> unit_position(const ComplexMatrix& e) {
  for (std::size_t i = 0; i < e.rows(); ++i)
    for (std::size_t j = 0; j < e.cols(); ++j)
      if (e(i, j) != Complex{}) return {i, j};
  throw DomainError("unit_position: zero matrix");
}

}  // namespace

GammaSearchResult search_gamma(std::span<const std::size_t> sizes, const Permutation& sigma) {
  const std::size_t d = sizes.size();
  if (sigma.size() != d) throw DomainError("search_gamma: sigma/sizes length mismatch");
  require_positive(sizes, "search_gamma");
  const std::size_t n = product(sizes, 0, d);
  if (n > 8) throw DomainError("search_gamma: exhaustive search limited to total size 8");

  // Every tensor X_1 (x) ... (x) X_d of canonical basis matrices, and the
  // reordered tensor it must be mapped to, each recorded by its unit entry.
  MultiIndex range(std::vector<MultiIndex::value_type>(sizes.begin(), sizes.end()));
  struct Case {
    std::pair<std::size_t, std::size_t> source, target;
    ComplexMatrix source_matrix, target_matrix;
  };
  std::vector<Case> cases;
  for_each_index(range, [&](const MultiIndex& u) {
    for_each_index(range, [&](const MultiIndex& v) {
      std::vector<ComplexMatrix> factors, reordered;
      for (std::size_t r = 0; r < d; ++r)
        factors.push_back(ComplexMatrix::unit(sizes[r], static_cast<std::size_t>(u[r]),
                                              static_cast<std::size_t>(v[r])));
      for (std::size_t r = 1; r <= d; ++r) reordered.push_back(factors[sigma(r) - 1]);
      Case c{{}, {}, kron_all(factors), kron_all(reordered)};
      c.source = unit_position(c.source_matrix);
      c.target = unit_position(c.target_matrix);
      cases.push_back(std::move(c));
    });
  });

  GammaSearchResult result;
  std::vector<std::size_t> z(n);
  std::iota(z.begin(), z.end(), std::size_t{1});
  do {
    ++result.candidates;
    // (G X G^T)_{ij} = X_{z(i), z(j)}: the unit entry moves to (z^{-1}(U), z^{-1}(V)).
    std::vector<std::size_t> inv(n);
    for (std::size_t i = 0; i < n; ++i) inv[z[i] - 1] = i;
    bool ok = true;
    for (const auto& c : cases) {
      if (inv[c.source.first] != c.target.first || inv[c.source.second] != c.target.second) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    const Permutation g(z);
    for (const auto& c : cases)
      if (conjugate(g, c.source_matrix, g) != c.target_matrix) ok = false;
    if (ok) {
      ++result.matches;
      result.solutions.push_back(g);
    }
  } while (std::next_permutation(z.begin(), z.end()));

  result.unique_and_equals_gamma =
      result.matches == 1 && result.solutions.front() == gamma(sizes, sigma);
  return result;
}

std::vector<Permutation> search_commuting(std::size_t n) {
  if (n < 1 || n > 8) throw DomainError("search_commuting: size must be in 1..8");
  std::vector<Permutation> found;
  std::vector<std::size_t> z(n);
  std::iota(z.begin(), z.end(), std::size_t{1});
  do {
    const Permutation p(z);
    bool commutes = true;
    for (std::size_t u = 1; u <= n && commutes; ++u)
      for (std::size_t v = 1; v <= n && commutes; ++v) {
        const ComplexMatrix e = ComplexMatrix::unit(n, u, v);
        // P E versus E P = E (P^T)^T.
        commutes = apply_rows(p, e) == conjugate(Permutation::identity(n), e, invert(p));
      }
    if (commutes) found.push_back(p);
  } while (std::next_permutation(z.begin(), z.end()));
  return found;
}

}  // namespace gltkit
