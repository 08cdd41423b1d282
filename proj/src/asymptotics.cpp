#include "gltkit/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gltkit/error.hpp"
#include "gltkit/parallel.hpp"

namespace gltkit {

ComplexMatrix MatrixFamily::at(const MultiIndex& n) const {
  if (!generator) throw DomainError("matrix family has no generator");
  ComplexMatrix a = generator(n);
  const std::size_t total = n_of(n);
  if (a.rows() != total * s || a.cols() != total * t)
    throw DomainError("generator at " + to_string(n) + " returned " + std::to_string(a.rows()) +
                      "x" + std::to_string(a.cols()) + ", expected " +
                      std::to_string(total * s) + "x" + std::to_string(total * t));
  return a;
}

std::vector<MultiIndex> schedule_1d(std::span<const std::size_t> sizes) {
  return schedule_iso(sizes, 1);
}

std::vector<MultiIndex> schedule_iso(std::span<const std::size_t> sizes, std::size_t d) {
  std::vector<MultiIndex> out;
  for (std::size_t m : sizes) out.push_back(MultiIndex::filled(d, static_cast<std::int64_t>(m)));
  return out;
}

std::vector<std::size_t> tail_half(std::size_t length) {
  std::vector<std::size_t> out;
  for (std::size_t i = length / 2; i < length; ++i) out.push_back(i);
  return out;
}

double TestFunction::operator()(double v) const {
  const double dist = std::abs(v - center);
  if (kind == Kind::Hat) return dist >= width ? 0.0 : 1.0 - dist / width;
  const double inner = 0.5 * width;
  if (dist <= inner) return 1.0;
  if (dist >= width) return 0.0;
  return (width - dist) / (width - inner);
}

std::string TestFunction::describe() const {
  std::ostringstream os;
  os << (kind == Kind::Hat ? "hat" : "plateau") << "(center=" << center << ",width=" << width
     << ")";
  return os.str();
}

TestBattery TestBattery::hats(double lo, double hi, std::size_t q) {
  if (!(hi > lo)) throw DomainError("battery range must have hi > lo");
  if (q < 2) throw DomainError("battery needs at least 2 hats");
  TestBattery b;
  b.lo = lo;
  b.hi = hi;
  const double h = (hi - lo) / static_cast<double>(q - 1);
  for (std::size_t j = 0; j < q; ++j)
    b.functions.push_back({TestFunction::Kind::Hat, lo + h * static_cast<double>(j), h});
  const double reach = std::max(std::abs(lo), std::abs(hi));
  b.functions.push_back({TestFunction::Kind::Plateau, 0.0, reach});
  return b;
}

TestBattery TestBattery::for_range(double min, double max, std::size_t q) {
  const double pad = max > min ? 0.1 * (max - min) : 0.1;
  return hats(min - pad, max + pad, q);
}

const char* to_string(SpectralMode mode) {
  return mode == SpectralMode::Singular ? "sv" : "eig";
}

double empirical_average(std::span<const double> values, const TestFunction& f) {
  if (values.empty()) return 0.0;
  double sum = 0.0;
  for (double v : values) sum += f(v);
  return sum / static_cast<double>(values.size());
}

double empirical_sv_average(const ComplexMatrix& a, const TestFunction& f) {
  return empirical_average(svd_values(a), f);
}

namespace {

void block_values(const ComplexMatrix& block, SpectralMode mode, std::vector<double>& out) {
  if (block.rows() == 1 && block.cols() == 1) {
    if (mode == SpectralMode::Singular) {
      out.push_back(std::abs(block(0, 0)));
    } else {
      if (std::abs(block(0, 0).imag()) > 1e-12 * std::max(1.0, std::abs(block(0, 0))))
        throw DomainError("eigenvalue reference requested for a non-Hermitian symbol");
      out.push_back(block(0, 0).real());
    }
    return;
  }
  const auto v = mode == SpectralMode::Singular ? svd_values(block) : eigh(block);
  out.insert(out.end(), v.begin(), v.end());
}

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  while (exp--) r *= base;
  return r;
}

}  // namespace

SymbolSamples symbol_samples(const GltSymbol& kappa, SpectralMode mode, std::size_t grid) {
  if (grid < 2) throw DomainError("symbol grid needs at least 2 points per dimension");
  if (mode == SpectralMode::Eigen && kappa.block_rows() != kappa.block_cols())
    throw DomainError("eigenvalue reference needs square symbol blocks");
  const std::size_t d = kappa.levels();
  const bool theta_only = kappa.is_x_independent();
  const std::size_t dims = theta_only ? d : 2 * d;

  SymbolSamples out;
  out.grid_per_dim = grid;
  const double g = static_cast<double>(grid);
  const double h = 2.0 * std::numbers::pi / g;
  std::vector<double> x(d, 0.5), theta(d);
  for_each_index(MultiIndex::filled(dims, static_cast<std::int64_t>(grid)),
                 [&](const MultiIndex& j) {
                   ++out.nodes;
                   for (std::size_t r = 0; r < d; ++r) {
                     const std::size_t slot = theta_only ? r : d + r;
                     theta[r] = -std::numbers::pi + h * (static_cast<double>(j[slot]) - 0.5);
                     if (!theta_only) x[r] = (static_cast<double>(j[r]) - 0.5) / g;
                   }
                   auto value = kappa.try_eval(x, theta);
                   if (!value) {
                     ++out.skipped;
                     return;
                   }
                   block_values(*value, mode, out.values);
                 });
  if (100 * out.skipped > out.nodes)
    throw DomainError("symbol is undefined at " + std::to_string(out.skipped) + " of " +
                      std::to_string(out.nodes) + " reference nodes (limit 1%)");
  return out;
}

SymbolSamples symbol_samples_auto(const GltSymbol& kappa, SpectralMode mode,
                                  std::size_t max_nodes) {
  const std::size_t dims = kappa.is_x_independent() ? kappa.levels() : 2 * kappa.levels();
  std::size_t g = 2;
  while (ipow(g + 1, dims) <= max_nodes) ++g;
  return symbol_samples(kappa, mode, g);
}

double symbol_sv_average(const GltSymbol& kappa, const TestFunction& f, std::size_t grid) {
  return empirical_average(symbol_samples(kappa, SpectralMode::Singular, grid).values, f);
}

double symbol_sv_average(const TrigPoly& f, const TestFunction& test, std::size_t grid) {
  return symbol_sv_average(GltSymbol::from_trig(f), test, grid);
}

bool DistributionReport::decreasing() const {
  for (std::size_t i = 1; i < delta.size(); ++i)
    if (!(delta[i] < delta[i - 1])) return false;
  return true;
}

std::vector<double> spectral_values(const ComplexMatrix& a, SpectralMode mode) {
  if (mode == SpectralMode::Singular) return svd_values(a);
  if (!a.is_square()) throw DomainError("eigenvalue mode needs square matrices");
  if (!a.is_hermitian())
    throw DomainError("eigenvalue mode is limited to Hermitian matrices");
  return eigh(a);
}

DistributionReport distribution_report(const MatrixFamily& family, const GltSymbol& kappa,
                                       const TestBattery& battery, SpectralMode mode, double tol) {
  if (family.schedule.empty()) throw DomainError("distribution report needs a non-empty schedule");
  if (mode == SpectralMode::Eigen && family.s != family.t)
    throw DomainError("eigenvalue mode needs a square family");
  const auto reference_values = symbol_samples_auto(kappa, mode).values;
  std::vector<double> reference;
  for (const auto& f : battery.functions) reference.push_back(empirical_average(reference_values, f));

  const std::size_t count = family.schedule.size();
  std::vector<std::vector<double>> values(count);
  parallel_for(count, [&](std::size_t k) {
    values[k] = spectral_values(family.at(family.schedule[k]), mode);
  });

  DistributionReport report;
  report.mode = mode;
  report.battery = battery;
  report.schedule = family.schedule;
  report.tol = tol;
  for (std::size_t k = 0; k < count; ++k) {
    double worst = 0.0;
    for (std::size_t fi = 0; fi < battery.functions.size(); ++fi) {
      DistributionRow row;
      row.n = family.schedule[k];
      row.size = n_of(row.n);
      row.f_index = fi;
      row.empirical = empirical_average(values[k], battery.functions[fi]);
      row.reference = reference[fi];
      row.abs_diff = std::abs(row.empirical - row.reference);
      worst = std::max(worst, row.abs_diff);
      report.rows.push_back(row);
    }
    report.delta.push_back(worst);
  }
  report.pass = report.delta.back() <= tol && report.delta.back() <= report.delta.front();
  return report;
}

DistributionReport distribution_report(const MatrixFamily& family, const GltSymbol& kappa,
                                       SpectralMode mode, double tol) {
  const auto samples = symbol_samples_auto(kappa, mode).values;
  if (samples.empty()) throw DomainError("symbol produced no reference values");
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  return distribution_report(family, kappa, TestBattery::for_range(*lo, *hi), mode, tol);
}

namespace {

bool non_increasing(std::span<const double> v, double slack = 1e-12) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > v[i - 1] + slack) return false;
  return true;
}

double fraction_above(std::span<const double> values, double threshold) {
  if (values.empty()) return 0.0;
  const auto above = std::count_if(values.begin(), values.end(),
                                   [&](double v) { return v > threshold; });
  return static_cast<double>(above) / static_cast<double>(values.size());
}

std::vector<std::vector<double>> singular_values_of(const MatrixFamily& family) {
  std::vector<std::vector<double>> values(family.schedule.size());
  parallel_for(values.size(), [&](std::size_t k) {
    values[k] = svd_values(family.at(family.schedule[k]));
  });
  return values;
}

}  // namespace

FractionReport is_zero_distributed(const MatrixFamily& family, double eps, double tol) {
  if (!(eps > 0.0)) throw DomainError("zero-distribution threshold must be positive");
  if (family.schedule.empty()) throw DomainError("zero-distribution check needs a schedule");
  FractionReport report;
  report.schedule = family.schedule;
  report.tol = tol;
  for (const auto& values : singular_values_of(family))
    report.fraction.push_back(fraction_above(values, eps));
  report.pass = non_increasing(report.fraction) && report.fraction.back() <= tol;
  return report;
}

SuProfile su_profile_from_values(const std::vector<MultiIndex>& schedule,
                                 const std::vector<std::vector<double>>& singular_values,
                                 std::span<const double> ms, double tol) {
  if (ms.empty()) throw DomainError("s.u. profile needs at least one threshold");
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (!(ms[i] > 0.0)) throw DomainError("s.u. thresholds must be positive");
    if (i && !(ms[i] > ms[i - 1])) throw DomainError("s.u. thresholds must be ascending");
  }
  if (schedule.empty() || schedule.size() != singular_values.size())
    throw DomainError("s.u. profile needs one singular value list per scheduled size");
  SuProfile p;
  p.schedule = schedule;
  p.ms.assign(ms.begin(), ms.end());
  p.tol = tol;
  for (const auto& values : singular_values) {
    std::vector<double> row;
    for (double m : ms) row.push_back(fraction_above(values, m));
    p.fraction.push_back(std::move(row));
  }
  const auto tail = tail_half(schedule.size());
  for (std::size_t j = 0; j < ms.size(); ++j) {
    double worst = 0.0;
    for (std::size_t k : tail) worst = std::max(worst, p.fraction[k][j]);
    p.tail.push_back(worst);
  }
  p.pass = non_increasing(p.tail) && p.tail.back() <= tol;
  return p;
}

SuProfile su_profile(const MatrixFamily& family, std::span<const double> ms, double tol) {
  return su_profile_from_values(family.schedule, singular_values_of(family), ms, tol);
}

SvdSplit svd_split(const ComplexMatrix& a, double m) {
  if (!(m > 0.0)) throw DomainError("splitting threshold must be positive");
  SvdSplit out;
  if (a.rows() == 0 || a.cols() == 0) {
    out.hat = a;
    out.tilde = a;
    return out;
  }
  const bool tall = a.rows() >= a.cols();
  const HermitianEigen eig = eigh_vectors(gram(a));
  const std::size_t k = eig.values.size();
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < k; ++i)
    if (std::sqrt(std::max(eig.values[i], 0.0)) > m) keep.push_back(i);
  out.rank = keep.size();

  ComplexMatrix basis(k, keep.size());
  for (std::size_t c = 0; c < keep.size(); ++c)
    for (std::size_t r = 0; r < k; ++r) basis(r, c) = eig.vectors(r, keep[c]);

  if (keep.empty()) {
    out.hat = ComplexMatrix(a.rows(), a.cols());
  } else if (tall) {
    out.hat = (a * basis) * basis.adjoint();  // A V_h V_h^*
  } else {
    out.hat = basis * (basis.adjoint() * a);  // U_h U_h^* A
  }
  out.tilde = a - out.hat;
  return out;
}

}  // namespace gltkit
