#include "gltkit/glt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gltkit/error.hpp"
#include "gltkit/rng.hpp"
#include "gltkit/sampling.hpp"
#include "gltkit/shuffle.hpp"
#include "gltkit/toeplitz.hpp"

namespace gltkit {

ComplexMatrix assemble(const GltSymbol& kappa, const MultiIndex& n) {
  const std::size_t total = n_of(n);
  ComplexMatrix out(total * kappa.block_rows(), total * kappa.block_cols());
  for (const auto& term : kappa.terms()) {
    const auto diag = sampling_diagonal({n, term.a, kappa.block_rows()});
    out += scale_rows(diag, toeplitz(n, term.f));
  }
  return out;
}

GltOperand glt_from_symbol(const GltSymbol& kappa, std::vector<MultiIndex> schedule) {
  for (const auto& n : schedule)
    if (n.size() != kappa.levels())
      throw DomainError("schedule entry " + to_string(n) + " does not match a " +
                        std::to_string(kappa.levels()) + "-level symbol");
  GltOperand op{MatrixFamily{std::move(schedule), nullptr, kappa.block_rows(), kappa.block_cols()},
                kappa, kappa.terms()};
  op.family.generator = [kappa](const MultiIndex& n) { return assemble(kappa, n); };
  return op;
}

namespace {

void require_same_schedule(const GltOperand& u, const GltOperand& v) {
  if (u.family.schedule != v.family.schedule)
    throw DomainError("GLT operands live on different schedules");
}

}  // namespace

GltOperand glt_add(const GltOperand& u, const GltOperand& v) {
  require_same_schedule(u, v);
  GltOperand out{u.family, symbol_add(u.symbol, v.symbol), std::nullopt};
  out.family.generator = [fu = u.family, fv = v.family](const MultiIndex& n) {
    return fu.at(n) + fv.at(n);
  };
  return out;
}

GltOperand glt_scale(Complex alpha, const GltOperand& u) {
  GltOperand out{u.family, symbol_scale(alpha, u.symbol), std::nullopt};
  out.family.generator = [fu = u.family, alpha](const MultiIndex& n) { return alpha * fu.at(n); };
  return out;
}

GltOperand glt_mul(const GltOperand& u, const GltOperand& v) {
  require_same_schedule(u, v);
  GltOperand out{u.family, symbol_mul(u.symbol, v.symbol), std::nullopt};
  out.family.t = v.family.t;
  out.family.generator = [fu = u.family, fv = v.family](const MultiIndex& n) {
    return fu.at(n) * fv.at(n);
  };
  return out;
}

GltOperand glt_tensor(std::span<const GltOperand> ops) {
  if (ops.empty()) throw DomainError("tensor product of an empty operand list");
  const std::size_t length = ops[0].family.schedule.size();
  std::vector<std::size_t> level_counts;
  std::vector<GltSymbol> symbols;
  std::size_t s = 1, t = 1;
  for (const auto& op : ops) {
    if (op.family.schedule.size() != length)
      throw DomainError("tensor factors need schedules of equal length");
    level_counts.push_back(op.symbol.levels());
    symbols.push_back(op.symbol);
    s *= op.family.s;
    t *= op.family.t;
  }
  MatrixFamily family;
  family.s = s;
  family.t = t;
  for (std::size_t k = 0; k < length; ++k) {
    std::vector<MultiIndex> parts;
    for (const auto& op : ops) parts.push_back(op.family.schedule[k]);
    family.schedule.push_back(concat(parts));
  }
  std::vector<MatrixFamily> factors;
  for (const auto& op : ops) factors.push_back(op.family);
  family.generator = [factors, level_counts](const MultiIndex& n) {
    const auto parts = split(n, level_counts);
    std::vector<ComplexMatrix> mats;
    std::vector<std::size_t> sizes, ss, ts;
    for (std::size_t r = 0; r < factors.size(); ++r) {
      mats.push_back(factors[r].at(parts[r]));
      sizes.push_back(n_of(parts[r]));
      ss.push_back(factors[r].s);
      ts.push_back(factors[r].t);
    }
    // Pi_s^T X Pi_t = conjugate(Pi_s^{-1}, X, Pi_t^{-1}).
    return conjugate(invert(pi(sizes, ss)), kron_all(mats), invert(pi(sizes, ts)));
  };
  return GltOperand{std::move(family), symbol_tensor_all(symbols), std::nullopt};
}

GltVerification verify_glt(const GltOperand& op, double tol) {
  GltVerification out;
  out.sv = distribution_report(op.family, op.symbol, SpectralMode::Singular, tol);
  out.pass = out.sv.pass;
  if (op.family.s != op.family.t) {
    out.eig_skipped = "blocks are not square";
  } else if (!op.symbol.is_hermitian()) {
    out.eig_skipped = "symbol is not Hermitian";
  } else {
    for (const auto& n : op.family.schedule) {
      if (!op.family.at(n).is_hermitian()) {
        out.eig_skipped = "matrix at " + to_string(n) + " is not Hermitian";
        break;
      }
    }
  }
  if (out.eig_skipped.empty()) {
    out.eig = distribution_report(op.family, op.symbol, SpectralMode::Eigen, tol);
    out.pass = out.pass && out.eig->pass;
  }
  return out;
}

Glt4Report glt4_limit_check(std::span<const std::pair<std::size_t, GltOperand>> approx,
                            const GltOperand& target, double tol, std::uint64_t seed,
                            std::size_t points) {
  if (approx.empty()) throw DomainError("GLT4 check needs at least one approximant");
  Glt4Report report;
  report.approximants_pass = true;
  AcsPair pair{target.family, {}};
  for (const auto& [m, op] : approx) {
    report.ms.push_back(m);
    report.approximants.push_back(verify_glt(op, tol));
    report.approximants_pass = report.approximants_pass && report.approximants.back().pass;
    pair.approximants.emplace_back(m, op.family);
  }

  const std::size_t d = target.symbol.levels();
  SplitMix64 rng(seed);
  std::vector<std::vector<double>> xs, thetas;
  for (std::size_t p = 0; p < points; ++p) {
    std::vector<double> x(d), theta(d);
    for (auto& v : x) v = rng.uniform();
    for (auto& v : theta) v = rng.uniform(-std::numbers::pi, std::numbers::pi);
    xs.push_back(std::move(x));
    thetas.push_back(std::move(theta));
  }
  for (const auto& [m, op] : approx) {
    double gap = 0.0;
    for (std::size_t p = 0; p < points; ++p) {
      auto a = op.symbol.try_eval(xs[p], thetas[p]);
      auto b = target.symbol.try_eval(xs[p], thetas[p]);
      if (a && b) gap = std::max(gap, max_abs_diff(*a, *b));
    }
    report.symbol_gap.push_back(gap);
  }
  const auto& g = report.symbol_gap;
  const bool all_zero = std::all_of(g.begin(), g.end(), [](double v) { return v <= 1e-12; });
  bool monotone = true;
  for (std::size_t i = 1; i < g.size(); ++i) monotone = monotone && g[i] <= g[i - 1] + 1e-12;
  report.symbols_converge = all_zero || (monotone && g.back() < g.front());

  report.acs = acs_check(pair, tol);
  report.pass = report.approximants_pass && report.symbols_converge && report.acs.pass;
  return report;
}

}  // namespace gltkit
