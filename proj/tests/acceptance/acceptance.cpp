// Acceptance runner: one PASS/FAIL line per criterion.
//
//   acceptance            run everything
//   acceptance --only 7   run criterion 7 alone (exit status reflects it)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "gltkit/acs.hpp"
#include "gltkit/asymptotics.hpp"
#include "gltkit/batteries.hpp"
#include "gltkit/fem.hpp"
#include "gltkit/glt.hpp"
#include "gltkit/toeplitz.hpp"

using namespace gltkit;

namespace {

constexpr std::uint64_t kSeed = 20240607;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;
  std::function<Outcome()> run;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string join(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + fmt(v[i]);
  return out + "]";
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) return false;
  return true;
}

bool non_increasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[i - 1] + 1e-12) return false;
  return true;
}

Outcome shuffle_identity() {
  const auto r = shuffle_battery(kSeed, 50);
  return {r.cases == 50 && r.max_dev == 0.0,
          std::to_string(r.cases) + " pairs, max deviation " + fmt(r.max_dev)};
}

Outcome gamma_identity() {
  const auto r = gamma_battery(kSeed, 3);
  return {r.max_dev == 0.0 && r.failures.empty(),
          std::to_string(r.cases) + " (sizes, sigma) cases over d = 2..4, max deviation " +
              fmt(r.max_dev)};
}

Outcome gamma_uniqueness() {
  const auto audit = permutation_audit(8);
  std::size_t bad = 0;
  std::size_t candidates = 0;
  for (const auto& e : audit) {
    candidates += e.search.candidates;
    if (!e.search.unique_and_equals_gamma) ++bad;
  }
  return {bad == 0 && !audit.empty(),
          std::to_string(audit.size()) + " (sizes, sigma) pairs, " + std::to_string(candidates) +
              " candidates searched, " + std::to_string(bad) + " not unique or not Gamma"};
}

Outcome toeplitz_tensor() {
  const auto r = toeplitz_battery(kSeed, 20);
  return {r.all.max_dev <= 1e-12 && r.scalar.max_dev == 0.0,
          "block battery max deviation " + fmt(r.all.max_dev) + " (limit 1e-12), scalar " +
              "battery max deviation " + fmt(r.scalar.max_dev) + " (must be 0)"};
}

Outcome sampling_tensor() {
  const auto r = sampling_battery(kSeed, 20);
  return {r.max_dev == 0.0, std::to_string(r.cases) + " cases, max deviation " + fmt(r.max_dev)};
}

Outcome glt_structure() {
  const auto r = glt_structural_battery(kSeed, 10);
  return {r.cases == 10 && r.max_dev <= 1e-12,
          std::to_string(r.cases) + " cases, max deviation " + fmt(r.max_dev)};
}

Outcome distribution_1d() {
  const std::size_t sizes[] = {128, 256, 512, 1024};
  const TrigPoly f = TrigPoly::laplacian();
  const GltOperand op = glt_from_symbol(GltSymbol::from_trig(f), schedule_1d(sizes));
  const auto report = distribution_report(op.family, op.symbol, SpectralMode::Eigen, 0.01);

  // Independent oracle: eigenvalues 2 - 2 cos(j pi / (n + 1)) fed through the same battery.
  double oracle_gap = 0.0;
  double eig_gap = 0.0;
  for (std::size_t k = 0; k < std::size(sizes); ++k) {
    const std::size_t n = sizes[k];
    std::vector<double> exact;
    for (std::size_t j = 1; j <= n; ++j)
      exact.push_back(2.0 - 2.0 * std::cos(static_cast<double>(j) * std::numbers::pi /
                                           static_cast<double>(n + 1)));
    const auto computed = eigh(op.family.at(MultiIndex{static_cast<std::int64_t>(n)}));
    std::sort(exact.begin(), exact.end());
    for (std::size_t j = 0; j < n; ++j) eig_gap = std::max(eig_gap, std::abs(exact[j] - computed[j]));
    for (std::size_t fi = 0; fi < report.battery.functions.size(); ++fi) {
      const double e = empirical_average(exact, report.battery.functions[fi]);
      const auto& row = report.rows[k * report.battery.functions.size() + fi];
      oracle_gap = std::max(oracle_gap, std::abs(e - row.empirical));
    }
  }
  const bool pass = report.delta.back() <= 0.01 && strictly_decreasing(report.delta) &&
                    eig_gap <= 1e-10 && oracle_gap <= 1e-12;
  return {pass, "delta " + join(report.delta) + " (last <= 0.01, decreasing); closed-form " +
                    "eigenvalue gap " + fmt(eig_gap) + ", battery gap vs oracle " +
                    fmt(oracle_gap)};
}

Outcome distribution_tensor() {
  const std::size_t sizes[] = {12, 24, 48};
  const auto schedule = schedule_1d(sizes);
  const GltOperand left = glt_from_symbol(
      GltSymbol::single(CoeffFn::coordinate(1, 1), TrigPoly::laplacian()), schedule);
  const GltOperand right = glt_from_symbol(GltSymbol::from_trig(TrigPoly::laplacian()), schedule);
  const GltOperand ops[] = {left, right};
  const GltOperand tensored = glt_tensor(ops);

  // The tensored symbol must be x1 (2 - 2cos t1)(2 - 2cos t2).
  double symbol_gap = 0.0;
  SplitMix64 rng(kSeed);
  for (int p = 0; p < 100; ++p) {
    const double x[] = {rng.uniform(), rng.uniform()};
    const double t[] = {rng.uniform(-std::numbers::pi, std::numbers::pi),
                        rng.uniform(-std::numbers::pi, std::numbers::pi)};
    const double expected = x[0] * (2 - 2 * std::cos(t[0])) * (2 - 2 * std::cos(t[1]));
    symbol_gap = std::max(symbol_gap, std::abs(tensored.symbol.eval(x, t)(0, 0) - expected));
  }
  const auto report =
      distribution_report(tensored.family, tensored.symbol, SpectralMode::Singular, 0.05);
  const bool pass =
      report.delta.back() <= 0.05 && strictly_decreasing(report.delta) && symbol_gap <= 1e-12;
  return {pass, "delta " + join(report.delta) + " at (12,12),(24,24),(48,48) (last <= 0.05, " +
                    "decreasing); symbol gap " + fmt(symbol_gap)};
}

Outcome acs_tensor() {
  const std::size_t ms[] = {1, 2, 4, 8};
  const std::size_t sizes[] = {64, 128, 256, 512};
  const auto single = acs_check(staircase_pair(sizes, ms), 0.1);

  const std::size_t tensor_sizes[] = {12, 24, 48};
  const AcsPair factor = staircase_pair(tensor_sizes, ms);
  const auto tensored = acs_tensor_check(factor, factor, 0.2);

  const auto negative = acs_check(identity_zero_pair(sizes, ms), 0.1);

  const bool single_ok = strictly_decreasing(single.rho_hat) && single.rho_hat.back() <= 0.1;
  const bool tensor_ok = strictly_decreasing(tensored.rho_hat) && tensored.rho_hat.back() <= 0.2;
  const bool negative_ok = !negative.pass;
  std::string detail = "single rho_hat " + join(single.rho_hat) + " (decreasing, rho_hat(8) <= " +
                       "0.1: " + (single_ok ? "yes" : "NO") + "); tensored rho_hat " +
                       join(tensored.rho_hat) + " (decreasing, rho_hat(8) <= 0.2: " +
                       (tensor_ok ? "yes" : "NO") + ")";
  if (!tensored.note.empty()) detail += " " + tensored.note;
  detail += "; negative control rho_hat " + join(negative.rho_hat) + " " +
            (negative_ok ? "FAILs as required" : "unexpectedly PASSes");
  return {single_ok && tensor_ok && negative_ok && tensored.hypothesis_met, detail};
}

Outcome fem_poisson() {
  const MultiIndex ps{1, 1};
  const std::size_t sizes[] = {12, 24, 48};
  const auto report = verify_poisson(ps, sizes, 0.05);

  // Stencils of the normalised 1D factors.
  const std::size_t m = 12;
  ComplexMatrix k = stiffness(m, 1);
  k *= 1.0 / static_cast<double>(m);
  ComplexMatrix mm = mass(m, 1);
  mm *= static_cast<double>(m);
  const std::size_t mid = k.rows() / 2;
  double stencil_gap = 0.0;
  const double k_row[] = {-1, 2, -1};
  const double m_row[] = {1.0 / 6, 2.0 / 3, 1.0 / 6};
  for (std::size_t c = 0; c < 3; ++c) {
    stencil_gap = std::max(stencil_gap, std::abs(k(mid, mid - 1 + c) - k_row[c]));
    stencil_gap = std::max(stencil_gap, std::abs(mm(mid, mid - 1 + c) - m_row[c]));
  }

  // Cross-check: (1/m)K (x) mM + mM (x) (1/m)K from the closed-form tridiagonal stencils.
  auto tridiag = [](std::size_t n, double diag, double off) {
    ComplexMatrix t(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      t(i, i) = diag;
      if (i + 1 < n) t(i, i + 1) = t(i + 1, i) = off;
    }
    return t;
  };
  double assembly_gap = 0.0;
  for (std::size_t mesh : sizes) {
    const std::size_t n = mesh - 1;
    const ComplexMatrix kk = tridiag(n, 2.0, -1.0);
    const ComplexMatrix ma = tridiag(n, 2.0 / 3, 1.0 / 6);
    const ComplexMatrix expected = kron(kk, ma) + kron(ma, kk);
    const auto mi = static_cast<std::int64_t>(mesh);
    assembly_gap = std::max(assembly_gap, max_abs_diff(poisson_matrix({mi, mi}, ps, true), expected));
  }
  const bool pass = report.hermitian && report.eig.delta.back() <= 0.05 &&
                    strictly_decreasing(report.eig.delta) && stencil_gap <= 1e-12 &&
                    assembly_gap <= 1e-12;
  return {pass, "eig delta " + join(report.eig.delta) + " (last <= 0.05, decreasing); sv delta " +
                    join(report.sv.delta) + "; stencil gap " + fmt(stencil_gap) +
                    ", closed-form assembly gap " + fmt(assembly_gap)};
}

Outcome su_machinery() {
  SplitMix64 rng(kSeed);
  std::size_t split_failures = 0;
  for (int c = 0; c < 30; ++c) {
    const auto rows = static_cast<std::size_t>(rng.integer(1, 12));
    const auto cols = static_cast<std::size_t>(rng.integer(1, 12));
    const ComplexMatrix a = random_matrix(rng, rows, cols);
    const auto sigma = svd_values(a);
    const double m = std::max(sigma[sigma.size() / 2], 1e-3);
    const auto split = svd_split(a, m);
    const std::size_t above = static_cast<std::size_t>(
        std::count_if(sigma.begin(), sigma.end(), [&](double v) { return v > m; }));
    const double scale = std::max(1.0, a.max_abs());
    const bool ok = max_abs_diff(split.hat + split.tilde, a) <= 1e-9 * scale &&
                    split.rank == above && numerical_rank(split.hat) == above &&
                    norm2(split.tilde) <= m + 1e-9;
    if (!ok) ++split_failures;
  }

  // Two s.u. families: one singular value growing like sqrt(n), and a bounded one.
  const std::size_t sizes[] = {8, 16, 24};
  const auto schedule = schedule_1d(sizes);
  const MatrixFamily spiky{schedule, [](const MultiIndex& n) {
                             ComplexMatrix a = toeplitz(n, TrigPoly::laplacian());
                             a(0, 0) += std::sqrt(static_cast<double>(n[0]));
                             return a;
                           }};
  const MatrixFamily smooth{schedule, [](const MultiIndex& n) {
                              return assemble(GltSymbol::from_coeff(CoeffFn::parse("1+x1", 1)), n);
                            }};
  const std::vector<double> ms = {1, 2, 4, 8, 16};
  const auto su_a = su_profile(spiky, ms, 0.0);
  const auto su_b = su_profile(smooth, ms, 0.0);
  std::vector<MultiIndex> kron_schedule;
  std::vector<std::vector<double>> kron_values;
  std::vector<double> ms_squared;
  for (double m : ms) ms_squared.push_back(m * m);
  bool fraction_bound = true;
  bool rank_bound = true;
  bool norm_bound = true;
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    const ComplexMatrix a = spiky.at(schedule[k]);
    const ComplexMatrix b = smooth.at(schedule[k]);
    const ComplexMatrix ab = kron(a, b);
    kron_schedule.push_back(concat(schedule[k], schedule[k]));
    kron_values.push_back(svd_values(ab));
    for (std::size_t j = 0; j < ms.size(); ++j) {
      const double kron_fraction =
          static_cast<double>(std::count_if(kron_values.back().begin(), kron_values.back().end(),
                                            [&](double v) { return v > ms_squared[j]; })) /
          static_cast<double>(kron_values.back().size());
      fraction_bound = fraction_bound &&
                       kron_fraction <= 2.0 * (su_a.fraction[k][j] + su_b.fraction[k][j]) + 1e-12;
      // The proof's splitting: A (x) B = [A_hat (x) B + A_tilde (x) B_hat] + A_tilde (x) B_tilde.
      const auto sa = svd_split(a, ms[j]);
      const auto sb = svd_split(b, ms[j]);
      const ComplexMatrix hat = kron(sa.hat, b) + kron(sa.tilde, sb.hat);
      const ComplexMatrix tilde = kron(sa.tilde, sb.tilde);
      rank_bound = rank_bound && numerical_rank(hat) <= sa.rank * b.rows() + sb.rank * a.rows();
      norm_bound = norm_bound && norm2(tilde) <= ms_squared[j] * (1 + 1e-9) &&
                   max_abs_diff(hat + tilde, ab) <= 1e-9 * std::max(1.0, ab.max_abs());
    }
  }
  const auto su_kron = su_profile_from_values(kron_schedule, kron_values, ms_squared, 0.0);
  const bool pass = split_failures == 0 && su_a.pass && su_b.pass && su_kron.pass &&
                    fraction_bound && rank_bound && norm_bound;
  return {pass, "svd_split contract failures " + std::to_string(split_failures) + "/30; factor " +
                    "tails " + join(su_a.tail) + ", " + join(su_b.tail) + "; kron tail " +
                    join(su_kron.tail) + "; fraction bound " + (fraction_bound ? "holds" : "FAILS") +
                    ", rank bound " + (rank_bound ? "holds" : "FAILS") + ", norm bound " +
                    (norm_bound ? "holds" : "FAILS")};
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--only N]\n", argv[0]);
      return 2;
    }
  }

  const std::vector<Criterion> criteria = {
      {1, "shuffle identity", 1.0, shuffle_identity},
      {2, "Gamma identity", 5.0, gamma_identity},
      {3, "Gamma uniqueness", 60.0, gamma_uniqueness},
      {4, "Toeplitz tensor theorem", 10.0, toeplitz_tensor},
      {5, "sampling tensor theorem", 5.0, sampling_tensor},
      {6, "GLT tensor structural identity", 30.0, glt_structure},
      {7, "1-level distribution trend", 60.0, distribution_1d},
      {8, "tensor distribution trend", 180.0, distribution_tensor},
      {9, "a.c.s. tensor", 60.0, acs_tensor},
      {10, "FEM Poisson", 120.0, fem_poisson},
      {11, "s.u. machinery", 30.0, su_machinery},
  };

  int failures = 0;
  int ran = 0;
  for (const auto& c : criteria) {
    if (only && c.id != only) continue;
    ++ran;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds <= c.limit_seconds;
    const bool pass = outcome.pass && in_time;
    if (!pass) ++failures;
    std::printf("[%s] %2d %s: %s (%.2f s, limit %.0f s%s)\n", pass ? "PASS" : "FAIL", c.id,
                c.title, outcome.detail.c_str(), seconds, c.limit_seconds,
                in_time ? "" : ", OVER BUDGET");
    std::fflush(stdout);
  }
  if (ran == 0) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  std::printf("%d/%d criteria passed\n", ran - failures, ran);
  return failures == 0 ? 0 : 1;
}
