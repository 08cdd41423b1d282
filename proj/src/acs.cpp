#include "gltkit/acs.hpp"

#include <algorithm>
#include <limits>

#include "gltkit/error.hpp"
#include "gltkit/parallel.hpp"

namespace gltkit {

double split_modulus_from_values(std::span<const double> sigma) {
  const std::size_t r = sigma.size();
  if (r == 0) return 0.0;
  double best = 1.0;  // j = r
  for (std::size_t j = 0; j < r; ++j)
    best = std::min(best, std::max(static_cast<double>(j) / static_cast<double>(r), sigma[j]));
  return best;
}

double split_modulus(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DomainError("split modulus needs equal sizes");
  return split_modulus_from_values(svd_values(a - b));
}

AcsReport acs_check(const AcsPair& pair, double tol) {
  if (pair.approximants.empty()) throw DomainError("a.c.s. check needs at least one approximant");
  const auto& schedule = pair.target.schedule;
  if (schedule.empty()) throw DomainError("a.c.s. check needs a non-empty schedule");
  for (const auto& [m, fam] : pair.approximants)
    if (fam.schedule != schedule)
      throw DomainError("approximant " + std::to_string(m) + " is not on the target's schedule");

  const auto tail = tail_half(schedule.size());
  const std::size_t count = pair.approximants.size();
  AcsReport report;
  report.tol = tol;
  report.rho.assign(count, std::vector<double>(schedule.size(), std::numeric_limits<double>::quiet_NaN()));
  for (std::size_t k : tail) {
    const ComplexMatrix a = pair.target.at(schedule[k]);
    parallel_for(count, [&](std::size_t mi) {
      const ComplexMatrix b = pair.approximants[mi].second.at(schedule[k]);
      report.rho[mi][k] = split_modulus(a, b);
    });
  }
  for (std::size_t mi = 0; mi < count; ++mi) {
    report.ms.push_back(pair.approximants[mi].first);
    double worst = 0.0;
    for (std::size_t k : tail) worst = std::max(worst, report.rho[mi][k]);
    report.rho_hat.push_back(worst);
  }
  bool monotone = true;
  for (std::size_t i = 1; i < count; ++i)
    monotone = monotone && report.rho_hat[i] <= report.rho_hat[i - 1] + 1e-12;
  report.pass = monotone && report.rho_hat.back() <= tol;
  return report;
}

namespace {

MatrixFamily kron_family(const MatrixFamily& left, const MatrixFamily& right) {
  if (left.schedule.size() != right.schedule.size())
    throw DomainError("tensor factors need schedules of equal length");
  MatrixFamily out;
  for (std::size_t k = 0; k < left.schedule.size(); ++k)
    out.schedule.push_back(concat(left.schedule[k], right.schedule[k]));
  out.s = left.s * right.s;
  out.t = left.t * right.t;
  const std::size_t split_at = left.levels();
  out.generator = [left, right, split_at](const MultiIndex& n) {
    const std::size_t lengths[] = {split_at, n.size() - split_at};
    const auto parts = split(n, lengths);
    return kron(left.at(parts[0]), right.at(parts[1]));
  };
  return out;
}

}  // namespace

AcsPair kron_pair(const AcsPair& left, const AcsPair& right) {
  if (left.approximants.size() != right.approximants.size())
    throw DomainError("tensor factors need the same approximant indices");
  AcsPair out;
  out.target = kron_family(left.target, right.target);
  for (std::size_t i = 0; i < left.approximants.size(); ++i) {
    if (left.approximants[i].first != right.approximants[i].first)
      throw DomainError("tensor factors need the same approximant indices");
    out.approximants.emplace_back(
        left.approximants[i].first,
        kron_family(left.approximants[i].second, right.approximants[i].second));
  }
  return out;
}

std::vector<double> default_su_thresholds() { return {1, 2, 4, 8, 16, 32, 64}; }

AcsReport acs_tensor_check(const AcsPair& left, const AcsPair& right, double tol,
                           std::span<const double> su_ms, double su_tol) {
  const auto left_su = su_profile(left.target, su_ms, su_tol);
  const auto right_su = su_profile(right.target, su_ms, su_tol);
  AcsReport report = acs_check(kron_pair(left, right), tol);
  report.hypothesis_met = left_su.pass && right_su.pass;
  if (!report.hypothesis_met) {
    report.note = "UNMET-HYPOTHESIS:";
    if (!left_su.pass) report.note += " left target is not s.u. at the scheduled sizes;";
    if (!right_su.pass) report.note += " right target is not s.u. at the scheduled sizes;";
  }
  return report;
}

AcsReport acs_tensor_check(const AcsPair& left, const AcsPair& right, double tol) {
  const auto ms = default_su_thresholds();
  return acs_tensor_check(left, right, tol, ms, 0.0);
}

}  // namespace gltkit
