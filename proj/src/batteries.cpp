#include "gltkit/batteries.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "gltkit/error.hpp"
#include "gltkit/glt.hpp"

namespace gltkit {

namespace {

// Quarter-integers in [-3/4, 3/4]: products of up to four of them are exact,
// so identities that only reorder products can be compared with zero slack.
ComplexMatrix random_dyadic_matrix(SplitMix64& rng, std::size_t rows, std::size_t cols) {
  ComplexMatrix a(rows, cols);
  for (auto& z : a.data())
    z = Complex(static_cast<double>(rng.integer(-3, 3)) / 4.0,
                static_cast<double>(rng.integer(-3, 3)) / 4.0);
  return a;
}

std::string describe_sizes(std::span<const std::size_t> v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

void record(BatteryResult& r, double dev, double threshold, const std::string& what) {
  ++r.cases;
  r.max_dev = std::max(r.max_dev, dev);
  r.labels.push_back(what);
  r.devs.push_back(dev);
  if (dev > threshold) r.failures.push_back(what);
}

}  // namespace

ComplexMatrix random_matrix(SplitMix64& rng, std::size_t rows, std::size_t cols,
                            bool complex_entries) {
  ComplexMatrix a(rows, cols);
  for (auto& z : a.data())
    z = Complex(rng.uniform(-1.0, 1.0), complex_entries ? rng.uniform(-1.0, 1.0) : 0.0);
  return a;
}

TrigPoly random_trig(SplitMix64& rng, std::size_t levels, std::size_t s, std::size_t t,
                     std::int64_t bandwidth, bool integer_real) {
  TrigPoly f(levels, s, t);
  for_each_index(MultiIndex::filled(levels, 2 * bandwidth + 1), [&](const MultiIndex& j) {
    if (rng.uniform() < 0.5) return;
    const MultiIndex k = j - MultiIndex::filled(levels, bandwidth + 1);
    ComplexMatrix c(s, t);
    for (auto& z : c.data())
      z = integer_real ? Complex(static_cast<double>(rng.integer(-3, 3)), 0.0)
                       : Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    f.set(k, std::move(c));
  });
  if (f.coeffs().empty()) {
    ComplexMatrix c(s, t);
    for (auto& z : c.data()) z = 1.0;
    f.set(MultiIndex::zeros(levels), std::move(c));
  }
  return f;
}

MultiIndex random_size(SplitMix64& rng, std::size_t max_total) {
  const auto cap = static_cast<std::int64_t>(max_total);
  const std::int64_t n1 = rng.integer(1, cap);
  if (rng.uniform() < 0.5) return MultiIndex{n1};
  return MultiIndex{n1, rng.integer(1, cap / n1)};
}

CoeffFn random_coeff(SplitMix64& rng, std::size_t levels) {
  // '@' stands for the level's variable.
  static const char* const kPool[] = {"1",          "@",          "@*(1-@)", "cos(@)",
                                      "exp(@)/2",   "abs(@-0.5)", "1+@^2",   "sin(3*@)+2"};
  std::string text;
  for (std::size_t r = 1; r <= levels; ++r) {
    std::string piece = kPool[rng.index(std::size(kPool))];
    std::string var = "x" + std::to_string(r);
    std::string expanded;
    for (char c : piece) expanded += c == '@' ? var : std::string(1, c);
    text += (r > 1 ? "*(" : "(") + expanded + ")";
  }
  return CoeffFn::parse(text, levels);
}

BatteryResult shuffle_battery(std::uint64_t seed, std::size_t count) {
  SplitMix64 rng(seed);
  BatteryResult r;
  for (std::size_t c = 0; c < count; ++c) {
    const auto m1 = static_cast<std::size_t>(rng.integer(1, 6));
    const auto n1 = static_cast<std::size_t>(rng.integer(1, 6));
    const auto m2 = static_cast<std::size_t>(rng.integer(1, 6));
    const auto n2 = static_cast<std::size_t>(rng.integer(1, 6));
    const ComplexMatrix x1 = random_matrix(rng, m1, n1);
    const ComplexMatrix x2 = random_matrix(rng, m2, n2);
    const double dev =
        max_abs_diff(kron(x2, x1), conjugate(p_shuffle(m1, m2), kron(x1, x2), p_shuffle(n1, n2)));
    record(r, dev, 0.0,
           "X1 " + std::to_string(m1) + "x" + std::to_string(n1) + ", X2 " + std::to_string(m2) +
               "x" + std::to_string(n2));
  }
  return r;
}

BatteryResult gamma_battery(std::uint64_t seed, std::size_t rounds) {
  SplitMix64 rng(seed);
  BatteryResult r;
  for (std::size_t d = 2; d <= 4; ++d) {
    for (std::size_t round = 0; round < rounds; ++round) {
      std::vector<std::size_t> ms(d), ns(d);
      std::vector<ComplexMatrix> xs;
      for (std::size_t i = 0; i < d; ++i) {
        ms[i] = static_cast<std::size_t>(rng.integer(1, 3));
        ns[i] = static_cast<std::size_t>(rng.integer(1, 3));
        xs.push_back(random_dyadic_matrix(rng, ms[i], ns[i]));
      }
      const ComplexMatrix base = kron_all(xs);
      std::vector<std::size_t> sigma(d);
      std::iota(sigma.begin(), sigma.end(), std::size_t{1});
      do {
        const Permutation s(sigma);
        std::vector<ComplexMatrix> reordered;
        for (std::size_t i = 1; i <= d; ++i) reordered.push_back(xs[s(i) - 1]);
        const double dev =
            max_abs_diff(kron_all(reordered), conjugate(gamma(ms, s), base, gamma(ns, s)));
        record(r, dev, 0.0,
               "rows " + describe_sizes(ms) + ", cols " + describe_sizes(ns) + ", sigma " +
                   to_string(s));
      } while (std::next_permutation(sigma.begin(), sigma.end()));
    }
  }
  return r;
}

std::vector<AuditEntry> permutation_audit(std::size_t max_total) {
  if (max_total > 8) throw DomainError("exhaustive audit is limited to total size 8");
  std::vector<std::vector<std::size_t>> size_lists;
  std::vector<std::size_t> current;
  // Depth-first over ordered size lists with every entry >= 2.
  auto extend = [&](auto&& self, std::size_t product) -> void {
    if (current.size() >= 2) size_lists.push_back(current);
    for (std::size_t n = 2; product * n <= max_total; ++n) {
      current.push_back(n);
      self(self, product * n);
      current.pop_back();
    }
  };
  extend(extend, 1);

  std::vector<AuditEntry> out;
  for (const auto& sizes : size_lists) {
    std::vector<std::size_t> sigma(sizes.size());
    std::iota(sigma.begin(), sigma.end(), std::size_t{1});
    do {
      const Permutation s(sigma);
      out.push_back({sizes, s, search_gamma(sizes, s)});
    } while (std::next_permutation(sigma.begin(), sigma.end()));
  }
  return out;
}

ToeplitzBatteryResult toeplitz_battery(std::uint64_t seed, std::size_t count) {
  SplitMix64 rng(seed);
  ToeplitzBatteryResult out;
  for (int scalar = 0; scalar < 2; ++scalar) {
    for (std::size_t c = 0; c < count; ++c) {
      const auto d = static_cast<std::size_t>(rng.integer(1, 3));
      std::vector<ToeplitzSpec> specs;
      std::ostringstream what;
      for (std::size_t r = 0; r < d; ++r) {
        const MultiIndex n = random_size(rng, 6);
        const std::size_t s = scalar ? 1 : static_cast<std::size_t>(rng.integer(1, 2));
        const std::size_t t = scalar ? 1 : static_cast<std::size_t>(rng.integer(1, 2));
        specs.push_back({n, random_trig(rng, n.size(), s, t, 2, scalar != 0)});
        what << (r ? " (x) " : "") << "T" << to_string(n) << "[" << s << "x" << t << "]";
      }
      const double dev = check_toeplitz_tensor(specs);
      record(scalar ? out.scalar : out.all, dev, scalar ? 0.0 : 1e-12, what.str());
    }
  }
  return out;
}

BatteryResult sampling_battery(std::uint64_t seed, std::size_t count) {
  SplitMix64 rng(seed);
  BatteryResult r;
  for (std::size_t c = 0; c < count; ++c) {
    const auto d = static_cast<std::size_t>(rng.integer(1, 3));
    std::vector<SamplingSpec> specs;
    std::ostringstream what;
    for (std::size_t i = 0; i < d; ++i) {
      const MultiIndex n = random_size(rng, 6);
      const auto s = static_cast<std::size_t>(rng.integer(1, 3));
      CoeffFn a = random_coeff(rng, n.size());
      what << (i ? " (x) " : "") << "D" << to_string(n) << "(" << a.to_string() << ")I" << s;
      specs.push_back({n, std::move(a), s});
    }
    record(r, check_sampling_tensor(specs), 0.0, what.str());
  }
  return r;
}

BatteryResult glt_structural_battery(std::uint64_t seed, std::size_t count) {
  SplitMix64 rng(seed);
  BatteryResult r;
  for (std::size_t c = 0; c < count; ++c) {
    const auto d = static_cast<std::size_t>(rng.integer(1, 3));
    std::vector<GltOperand> ops;
    std::vector<GltSymbol> symbols;
    std::vector<MultiIndex> ns;
    std::ostringstream what;
    for (std::size_t i = 0; i < d; ++i) {
      const MultiIndex n = random_size(rng, 5);
      const auto s = static_cast<std::size_t>(rng.integer(1, 2));
      const auto t = static_cast<std::size_t>(rng.integer(1, 2));
      GltSymbol kappa(n.size(), s, t);
      const auto terms = rng.integer(1, 2);
      for (std::int64_t k = 0; k < terms; ++k)
        kappa.add_term(random_coeff(rng, n.size()), random_trig(rng, n.size(), s, t, 1, false));
      what << (i ? " (x) " : "") << to_string(n) << "[" << s << "x" << t << ", " << terms
           << " terms]";
      ops.push_back(glt_from_symbol(kappa, {n}));
      symbols.push_back(kappa);
      ns.push_back(n);
    }
    const GltOperand tensored = glt_tensor(ops);
    const MultiIndex n = concat(ns);
    const double dev =
        max_abs_diff(tensored.family.at(n), assemble(symbol_tensor_all(symbols), n));
    record(r, dev, 1e-12, what.str());
  }
  return r;
}

AcsPair staircase_pair(std::span<const std::size_t> sizes, std::span<const std::size_t> ms,
                       const TrigPoly& f) {
  if (f.levels() != 1) throw DomainError("staircase pair needs a 1-level symbol");
  const auto schedule = schedule_1d(sizes);
  AcsPair pair;
  pair.target = glt_from_symbol(GltSymbol::single(CoeffFn::coordinate(1, 1), f), schedule).family;
  for (std::size_t m : ms)
    pair.approximants.emplace_back(
        m, glt_from_symbol(GltSymbol::single(CoeffFn::staircase(1, 1, m), f), schedule).family);
  return pair;
}

AcsPair identity_zero_pair(std::span<const std::size_t> sizes, std::span<const std::size_t> ms) {
  const auto schedule = schedule_1d(sizes);
  AcsPair pair;
  pair.target = {schedule, [](const MultiIndex& n) { return ComplexMatrix::identity(n_of(n)); }};
  for (std::size_t m : ms)
    pair.approximants.emplace_back(
        m, MatrixFamily{schedule, [](const MultiIndex& n) {
                          return ComplexMatrix(n_of(n), n_of(n));
                        }});
  return pair;
}

}  // namespace gltkit
