// Cyclic Jacobi for Hermitian matrices. Kept as an independent check on the
// LAPACK-backed eigh; see densela.hpp.

#include <algorithm>
#include <cmath>

#include "gltkit/densela.hpp"
#include "gltkit/error.hpp"

namespace gltkit {

std::vector<double> eigh_jacobi(const ComplexMatrix& input) {
  if (!input.is_square() || !input.is_hermitian(1e-12))
    throw DomainError("eigh_jacobi: matrix is not Hermitian");
  ComplexMatrix a = input;
  const std::size_t n = a.rows();
  const double stop = 1e-13 * a.frobenius_norm();

  auto off_mass = [&] {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < 40 && off_mass() > stop; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double b = std::abs(a(p, q));
        if (b == 0.0) continue;
        // Phase e^{i phi} of a_pq; D = diag(1, e^{-i phi}) makes the pivot real.
        const Complex phase = a(p, q) / b;
        const double app = a(p, p).real(), aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * b);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // J = D R with R = [[c, s], [-s, c]]; A <- J^* A J.
        const Complex jqp = -s * std::conj(phase);
        const Complex jqq = c * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * c + akq * jqp;
          a(k, q) = akp * s + akq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk + std::conj(jqp) * aqk;
          a(q, k) = s * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
  }

  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = a(i, i).real();
  std::sort(values.begin(), values.end());
  return values;
}

}  // namespace gltkit
