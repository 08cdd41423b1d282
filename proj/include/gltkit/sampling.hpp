#pragma once

// Diagonal sampling matrices D_n(a) (x) I_s = diag_{i=1..n} a(i/n) I_s, on the
// right-closed grid i/n in lexicographic order.

#include <cstddef>
#include <span>
#include <vector>

#include "gltkit/densela.hpp"
#include "gltkit/expr.hpp"
#include "gltkit/multiindex.hpp"

namespace gltkit {

struct SamplingSpec {
  MultiIndex n;
  CoeffFn a;
  std::size_t s = 1;
};

/// The N(n) s diagonal entries. Throws DomainError naming the grid point when
/// a is undefined there.
std::vector<Complex> sampling_diagonal(const SamplingSpec& spec);

ComplexMatrix diag_sampling(const SamplingSpec& spec);

/// max |(x)_r D_{n_r}(a_r I_{s_r}) - Pi D_n((a_1 (x) ... (x) a_d) I_{s_1...s_d}) Pi^T|
/// with Pi = pi([N(n_1)..N(n_d)], [s_1..s_d]) on both sides.
double check_sampling_tensor(std::span<const SamplingSpec> specs);

}  // namespace gltkit
