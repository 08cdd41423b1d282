#pragma once

// Multilevel block Toeplitz matrices T_n(f) = [f_{i-j}]_{i,j=1}^n, blocks laid
// out in lexicographic order of the multi-indices i, j.

#include <cstddef>
#include <span>

#include "gltkit/densela.hpp"
#include "gltkit/multiindex.hpp"
#include "gltkit/symbols.hpp"

namespace gltkit {

struct ToeplitzSpec {
  MultiIndex n;
  TrigPoly f;
};

/// Block (i, j) is f_{i-j}; frequencies outside the stored support give zero blocks.
ComplexMatrix toeplitz(const ToeplitzSpec& spec);
inline ComplexMatrix toeplitz(const MultiIndex& n, const TrigPoly& f) { return toeplitz({n, f}); }

/// J_n^{(k)}: (J)_{ij} = 1 when i - j = k, else 0.
ComplexMatrix shift_matrix(std::size_t n, std::int64_t k);
/// J_{n_1}^{(k_1)} (x) ... (x) J_{n_d}^{(k_d)}.
ComplexMatrix shift_matrix(const MultiIndex& n, const MultiIndex& k);

/// The same matrix assembled as sum_k J_n^{(k)} (x) f_k.
ComplexMatrix toeplitz_via_shifts(const ToeplitzSpec& spec);

/// max |(x)_r T_{n_r}(f_r) - Pi^s T_n((x)_r f_r) (Pi^t)^T| with
/// Pi^s = pi([N(n_1)..N(n_d)], [s_1..s_d]) and Pi^t likewise for the t_r.
double check_toeplitz_tensor(std::span<const ToeplitzSpec> specs);

}  // namespace gltkit
