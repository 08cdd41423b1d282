#pragma once

// Seeded randomized batteries for the exact identities. The CLI and the
// acceptance runner both call these, so a verdict printed by one is
// reproducible with the other from the seed alone.

#include <cstdint>
#include <string>
#include <vector>

#include "gltkit/acs.hpp"
#include "gltkit/densela.hpp"
#include "gltkit/rng.hpp"
#include "gltkit/sampling.hpp"
#include "gltkit/shuffle.hpp"
#include "gltkit/symbols.hpp"
#include "gltkit/toeplitz.hpp"

namespace gltkit {

/// Entries uniform in [-1,1] (real and, when complex_entries, imaginary parts).
ComplexMatrix random_matrix(SplitMix64& rng, std::size_t rows, std::size_t cols,
                            bool complex_entries = true);

/// Random s x t trigonometric polynomial with frequencies |k_r| <= bandwidth
/// and about half the frequencies populated. integer_real draws integers in
/// [-3,3] so every product is exact.
TrigPoly random_trig(SplitMix64& rng, std::size_t levels, std::size_t s, std::size_t t,
                     std::int64_t bandwidth, bool integer_real);

/// A random positive multi-index with 1 or 2 levels and N(n) <= max_total.
MultiIndex random_size(SplitMix64& rng, std::size_t max_total);

/// Random coefficient function on `levels` levels, defined everywhere on [0,1]^levels.
CoeffFn random_coeff(SplitMix64& rng, std::size_t levels);

struct BatteryResult {
  std::size_t cases = 0;
  double max_dev = 0.0;
  std::vector<std::string> labels;    // one per case
  std::vector<double> devs;           // one per case
  std::vector<std::string> failures;  // labels of cases over the threshold
};

/// X2 (x) X1 versus P_{m1,m2} (X1 (x) X2) P_{n1,n2}^T on random rectangles, sizes <= 6.
BatteryResult shuffle_battery(std::uint64_t seed, std::size_t count = 50);

/// Gamma identity for every sigma of every d in {2,3,4}, `rounds` random size
/// draws per d (sizes <= 3, random complex rectangular factors).
BatteryResult gamma_battery(std::uint64_t seed, std::size_t rounds = 3);

struct AuditEntry {
  std::vector<std::size_t> sizes;
  Permutation sigma;
  GammaSearchResult search;
};
/// Exhaustive uniqueness audit over every (sizes, sigma) with d >= 2, every
/// size >= 2 and total size <= max_total (at most 8).
std::vector<AuditEntry> permutation_audit(std::size_t max_total = 8);

struct ToeplitzBatteryResult {
  BatteryResult all;
  BatteryResult scalar;  // real integer scalar sub-battery
};
/// `count` random cases with d <= 3, multilevel n_r, N(n_r) <= 6, s_r, t_r <= 2,
/// complex coefficients; plus a scalar sub-battery of the same size.
ToeplitzBatteryResult toeplitz_battery(std::uint64_t seed, std::size_t count = 20);

/// Sampling tensor check on `count` random cases (d <= 3, N(n_r) <= 6, s_r <= 3).
BatteryResult sampling_battery(std::uint64_t seed, std::size_t count = 20);

/// Pi_s^T ((x)_r X_{n,r}) Pi_t versus sum over term tuples of D((x)a I) T((x)f),
/// for random canonical operands (d <= 3, at most 2 terms each).
BatteryResult glt_structural_battery(std::uint64_t seed, std::size_t count = 10);

/// Target {D_n(x1) T_n(f)} with approximants {D_n(a_m) T_n(f)}, a_m the
/// m-step midpoint staircase of x1, over 1-level sizes.
AcsPair staircase_pair(std::span<const std::size_t> sizes, std::span<const std::size_t> ms,
                       const TrigPoly& f = TrigPoly::laplacian());

/// Target {I_n} with approximants B_{n,m} = 0: never an a.c.s.
AcsPair identity_zero_pair(std::span<const std::size_t> sizes, std::span<const std::size_t> ms);

}  // namespace gltkit
