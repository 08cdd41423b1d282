#pragma once

// Approximating classes of sequences, scalarised. For A - B with singular
// values sigma_1 >= ... >= sigma_r (r = rows ^ cols) the splitting modulus is
//
//   rho(A, B) = min_{j=0..r} max(j / r, sigma_{j+1}),   sigma_{r+1} = 0,
//
// i.e. the best trade-off between the relative rank of R and the norm of N
// in A - B = R + N, R the rank-j truncated SVD. rho_hat(m) is the largest
// rho over the tail half of the schedule.

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gltkit/asymptotics.hpp"
#include "gltkit/densela.hpp"

namespace gltkit {

double split_modulus(const ComplexMatrix& a, const ComplexMatrix& b);
/// The same from the descending singular values of A - B.
double split_modulus_from_values(std::span<const double> sigma_desc);

struct AcsPair {
  MatrixFamily target;
  /// (m, {B_{n,m}}_n), m ascending; every family shares the target's schedule.
  std::vector<std::pair<std::size_t, MatrixFamily>> approximants;
};

struct AcsReport {
  std::vector<std::size_t> ms;
  std::vector<double> rho_hat;
  /// [m index][n index] split_modulus on the tail half of the schedule; NaN elsewhere.
  std::vector<std::vector<double>> rho;
  double tol = 0.0;
  bool pass = false;  // rho_hat non-increasing (1e-12 slack) and rho_hat.back() <= tol
  bool hypothesis_met = true;
  std::string note;  // "UNMET-HYPOTHESIS: ..." when an s.u. precondition failed
};

AcsReport acs_check(const AcsPair& pair, double tol);

/// The pair ({A_n (x) A'_n}, m -> {B_{n,m} (x) B'_{n,m}}) over the shared
/// schedule index; schedule entries are concatenated multi-indices.
AcsPair kron_pair(const AcsPair& left, const AcsPair& right);

/// Default thresholds for the s.u. precondition.
std::vector<double> default_su_thresholds();

/// acs_check on kron_pair(left, right). Both targets are first profiled with
/// su_profile(ms, su_tol); a failure is recorded in the report as an unmet
/// hypothesis and the check still runs.
AcsReport acs_tensor_check(const AcsPair& left, const AcsPair& right, double tol,
                           std::span<const double> su_ms, double su_tol);
AcsReport acs_tensor_check(const AcsPair& left, const AcsPair& right, double tol);

}  // namespace gltkit
