#pragma once

// GLT operands: a matrix family paired with its symbol, optionally in the
// canonical form sum_i D_n(a_i I_s) T_n(f_i). Algebra on operands mirrors the
// symbol algebra; the tensor product conjugates by Pi^T ... Pi.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gltkit/acs.hpp"
#include "gltkit/asymptotics.hpp"
#include "gltkit/symbols.hpp"

namespace gltkit {

struct GltOperand {
  MatrixFamily family;
  GltSymbol symbol;
  /// Present only for operands built directly from their symbol.
  std::optional<std::vector<SymbolTerm>> canonical;
};

/// generator(n) = sum_i D_n(a_i I_s) T_n(f_i).
ComplexMatrix assemble(const GltSymbol& kappa, const MultiIndex& n);
GltOperand glt_from_symbol(const GltSymbol& kappa, std::vector<MultiIndex> schedule);

GltOperand glt_add(const GltOperand& u, const GltOperand& v);
GltOperand glt_scale(Complex alpha, const GltOperand& u);
GltOperand glt_mul(const GltOperand& u, const GltOperand& v);

/// Factor r is sampled at the r-th part of each concatenated schedule entry;
/// generator(n) = Pi_s^T (A_{n,1} (x) ... (x) A_{n,d}) Pi_t with
/// Pi_s = pi([N(n_1)..N(n_d)], [s_1..s_d]) and Pi_t likewise for the t_r.
GltOperand glt_tensor(std::span<const GltOperand> ops);

struct GltVerification {
  DistributionReport sv;
  std::optional<DistributionReport> eig;
  std::string eig_skipped;  // reason, when eig is absent
  bool pass = false;        // sv.pass, and eig.pass when eig ran
};

/// Singular value report always; eigenvalue report only when every scheduled
/// matrix and the symbol are Hermitian.
GltVerification verify_glt(const GltOperand& op, double tol);

struct Glt4Report {
  std::vector<std::size_t> ms;
  std::vector<GltVerification> approximants;  // (i)
  bool approximants_pass = false;
  std::vector<double> symbol_gap;              // (ii) max |kappa_m - kappa| at sampled points
  bool symbols_converge = false;
  AcsReport acs;                               // (iii)
  bool pass = false;
};

/// Empirical GLT4 check: each approximant verifies its own symbol, the
/// symbols approach the target's at `points` random (x, theta), and the
/// families form an a.c.s. for the target.
Glt4Report glt4_limit_check(std::span<const std::pair<std::size_t, GltOperand>> approx,
                            const GltOperand& target, double tol, std::uint64_t seed = 1,
                            std::size_t points = 200);

}  // namespace gltkit
