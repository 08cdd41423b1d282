#include "gltkit/toeplitz.hpp"

#include <string>
#include <vector>

#include "gltkit/error.hpp"
#include "gltkit/shuffle.hpp"

namespace gltkit {

namespace {

void check_spec(const ToeplitzSpec& spec) {
  if (spec.f.levels() != spec.n.size())
    throw DomainError("symbol has " + std::to_string(spec.f.levels()) + " levels, size " +
                      to_string(spec.n) + " has " + std::to_string(spec.n.size()));
}

}  // namespace

ComplexMatrix toeplitz(const ToeplitzSpec& spec) {
  check_spec(spec);
  const std::size_t total = n_of(spec.n);
  const std::size_t s = spec.f.block_rows();
  const std::size_t t = spec.f.block_cols();
  ComplexMatrix out(total * s, total * t);
  const std::size_t d = spec.n.size();
  for (const auto& [k, block] : spec.f.coeffs()) {
    bool reachable = true;
    for (std::size_t r = 0; r < d; ++r) reachable = reachable && std::abs(k[r]) < spec.n[r];
    if (!reachable) continue;
    for_each_index(spec.n, [&](const MultiIndex& i) {
      MultiIndex j = i - k;
      for (std::size_t r = 0; r < d; ++r)
        if (j[r] < 1 || j[r] > spec.n[r]) return;
      const std::size_t row0 = (lex_rank(i, spec.n) - 1) * s;
      const std::size_t col0 = (lex_rank(j, spec.n) - 1) * t;
      for (std::size_t a = 0; a < s; ++a)
        for (std::size_t b = 0; b < t; ++b) out(row0 + a, col0 + b) = block(a, b);
    });
  }
  return out;
}

ComplexMatrix shift_matrix(std::size_t n, std::int64_t k) {
  ComplexMatrix j(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto col = static_cast<std::int64_t>(i) - k;
    if (col >= 0 && col < static_cast<std::int64_t>(n)) j(i, static_cast<std::size_t>(col)) = 1.0;
  }
  return j;
}

ComplexMatrix shift_matrix(const MultiIndex& n, const MultiIndex& k) {
  if (n.size() != k.size()) throw DomainError("shift order and size have different lengths");
  n_of(n);
  std::vector<ComplexMatrix> factors;
  for (std::size_t r = 0; r < n.size(); ++r)
    factors.push_back(shift_matrix(static_cast<std::size_t>(n[r]), k[r]));
  return kron_all(factors);
}

ComplexMatrix toeplitz_via_shifts(const ToeplitzSpec& spec) {
  check_spec(spec);
  const std::size_t total = n_of(spec.n);
  ComplexMatrix out(total * spec.f.block_rows(), total * spec.f.block_cols());
  for (const auto& [k, block] : spec.f.coeffs()) {
    bool reachable = true;
    for (std::size_t r = 0; r < k.size(); ++r) reachable = reachable && std::abs(k[r]) < spec.n[r];
    if (reachable) out += kron(shift_matrix(spec.n, k), block);
  }
  return out;
}

double check_toeplitz_tensor(std::span<const ToeplitzSpec> specs) {
  if (specs.empty()) throw DomainError("tensor check needs at least one factor");
  std::vector<ComplexMatrix> factors;
  std::vector<std::size_t> sizes, ss, ts;
  std::vector<MultiIndex> ns;
  TrigPoly f = specs[0].f;
  for (std::size_t r = 0; r < specs.size(); ++r) {
    factors.push_back(toeplitz(specs[r]));
    sizes.push_back(n_of(specs[r].n));
    ss.push_back(specs[r].f.block_rows());
    ts.push_back(specs[r].f.block_cols());
    ns.push_back(specs[r].n);
    if (r > 0) f = tp_trig(f, specs[r].f);
  }
  const ComplexMatrix lhs = kron_all(factors);
  const ComplexMatrix rhs = conjugate(pi(sizes, ss), toeplitz(concat(ns), f), pi(sizes, ts));
  return max_abs_diff(lhs, rhs);
}

}  // namespace gltkit
