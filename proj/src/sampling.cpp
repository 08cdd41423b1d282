#include "gltkit/sampling.hpp"

#include <string>

#include "gltkit/error.hpp"
#include "gltkit/shuffle.hpp"

namespace gltkit {

std::vector<Complex> sampling_diagonal(const SamplingSpec& spec) {
  if (spec.a.levels() != spec.n.size())
    throw DomainError("coefficient function has " + std::to_string(spec.a.levels()) +
                      " levels, size " + to_string(spec.n) + " has " +
                      std::to_string(spec.n.size()));
  if (spec.s == 0) throw DomainError("block inflation must be at least 1");
  const std::size_t d = spec.n.size();
  std::vector<Complex> diag;
  diag.reserve(n_of(spec.n) * spec.s);
  std::vector<double> x(d);
  for_each_index(spec.n, [&](const MultiIndex& i) {
    for (std::size_t r = 0; r < d; ++r)
      x[r] = static_cast<double>(i[r]) / static_cast<double>(spec.n[r]);
    auto v = spec.a.evaluate(x);
    if (!v)
      throw DomainError(spec.a.to_string() + " is undefined at the grid point " + to_string(i) +
                        "/" + to_string(spec.n));
    diag.insert(diag.end(), spec.s, Complex(*v));
  });
  return diag;
}

ComplexMatrix diag_sampling(const SamplingSpec& spec) {
  const auto diag = sampling_diagonal(spec);
  return ComplexMatrix::diagonal(std::span<const Complex>(diag));
}

double check_sampling_tensor(std::span<const SamplingSpec> specs) {
  if (specs.empty()) throw DomainError("tensor check needs at least one factor");
  std::vector<ComplexMatrix> factors;
  std::vector<std::size_t> sizes, ss;
  std::vector<MultiIndex> ns;
  CoeffFn a = specs[0].a;
  std::size_t s_total = 1;
  for (std::size_t r = 0; r < specs.size(); ++r) {
    factors.push_back(diag_sampling(specs[r]));
    sizes.push_back(n_of(specs[r].n));
    ss.push_back(specs[r].s);
    ns.push_back(specs[r].n);
    s_total *= specs[r].s;
    if (r > 0) a = tensor(a, specs[r].a);
  }
  const Permutation p = pi(sizes, ss);
  const ComplexMatrix lhs = kron_all(factors);
  const ComplexMatrix rhs = conjugate(p, diag_sampling({concat(ns), a, s_total}), p);
  return max_abs_diff(lhs, rhs);
}

}  // namespace gltkit
