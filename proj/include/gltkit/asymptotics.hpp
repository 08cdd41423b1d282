#pragma once

// Finite-n evidence for asymptotic spectral statements: matrix families over
// a size schedule, test-function batteries, singular value / eigenvalue
// distribution reports, zero-distribution and sparse-unboundedness profiles,
// and the SVD splitting A = A_hat + A_tilde.
//
// Every PASS here is a trend check at the scheduled sizes, never a limit.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gltkit/densela.hpp"
#include "gltkit/multiindex.hpp"
#include "gltkit/symbols.hpp"

namespace gltkit {

struct MatrixFamily {
  std::vector<MultiIndex> schedule;  // ascending
  std::function<ComplexMatrix(const MultiIndex&)> generator;
  std::size_t s = 1;
  std::size_t t = 1;

  std::size_t levels() const { return schedule.empty() ? 0 : schedule.front().size(); }
  /// generator(n), after checking it is N(n) s x N(n) t.
  ComplexMatrix at(const MultiIndex& n) const;
};

/// Schedule of 1-level sizes.
std::vector<MultiIndex> schedule_1d(std::span<const std::size_t> sizes);
/// Schedule of isotropic d-level sizes (m, ..., m).
std::vector<MultiIndex> schedule_iso(std::span<const std::size_t> sizes, std::size_t d);

/// Indices of the tail half of a schedule of the given length: the last
/// ceil(length / 2) entries.
std::vector<std::size_t> tail_half(std::size_t length);

/// A continuous, compactly supported test function with values in [0, 1].
struct TestFunction {
  enum class Kind { Hat, Plateau };
  Kind kind = Kind::Hat;
  double center = 0.0;
  /// Hat: support [center - width, center + width].
  /// Plateau: 1 on |t - center| <= width / 2, 0 beyond width, linear between.
  double width = 1.0;

  double operator()(double v) const;
  std::string describe() const;
};

struct TestBattery {
  double lo = 0.0;
  double hi = 1.0;
  std::vector<TestFunction> functions;

  /// q hats centred at lo + j h, h = (hi - lo) / (q - 1), each of half-width h,
  /// plus the plateau centred at 0 of width max(|lo|, |hi|).
  static TestBattery hats(double lo, double hi, std::size_t q = 17);
  /// hats() over [min, max] padded by 10% of its width (0.1 when degenerate).
  static TestBattery for_range(double min, double max, std::size_t q = 17);
};

enum class SpectralMode { Singular, Eigen };
const char* to_string(SpectralMode mode);

/// (1 / size) sum_i F(v_i).
double empirical_average(std::span<const double> values, const TestFunction& f);
/// (1 / (d ^ e)) sum_i F(sigma_i(A)).
double empirical_sv_average(const ComplexMatrix& a, const TestFunction& f);

/// Values whose equal-weight average approximates the symbol side of the
/// distribution: for every midpoint-rule node of [0,1]^d x [-pi,pi]^d (or of
/// [-pi,pi]^d alone when kappa does not depend on x), the singular values
/// (or eigenvalues) of kappa there. Nodes where some a_i is undefined are
/// skipped; more than 1% skipped is a DomainError.
struct SymbolSamples {
  std::vector<double> values;
  std::size_t grid_per_dim = 0;
  std::size_t nodes = 0;
  std::size_t skipped = 0;
};
SymbolSamples symbol_samples(const GltSymbol& kappa, SpectralMode mode, std::size_t grid_per_dim);
/// As above with the largest per-dimension grid that keeps the node count <= max_nodes.
SymbolSamples symbol_samples_auto(const GltSymbol& kappa, SpectralMode mode,
                                  std::size_t max_nodes = 4096);

double symbol_sv_average(const GltSymbol& kappa, const TestFunction& f, std::size_t grid_per_dim);
double symbol_sv_average(const TrigPoly& f, const TestFunction& test, std::size_t grid_per_dim);

struct DistributionRow {
  MultiIndex n;
  std::size_t size = 0;  // N(n)
  std::size_t f_index = 0;
  double empirical = 0.0;
  double reference = 0.0;
  double abs_diff = 0.0;
};

struct DistributionReport {
  SpectralMode mode = SpectralMode::Singular;
  TestBattery battery;
  std::vector<DistributionRow> rows;
  std::vector<MultiIndex> schedule;
  std::vector<double> delta;  // per scheduled n: max over the battery
  double tol = 0.0;
  bool pass = false;  // delta.back() <= tol and delta.back() <= delta.front()
  /// Strictly decreasing along the whole schedule.
  bool decreasing() const;
};

/// Spectral values of one matrix: singular values, or eigenvalues after a
/// Hermitian check (DomainError when the matrix is not Hermitian).
std::vector<double> spectral_values(const ComplexMatrix& a, SpectralMode mode);

DistributionReport distribution_report(const MatrixFamily& family, const GltSymbol& kappa,
                                       const TestBattery& battery, SpectralMode mode, double tol);
/// Battery chosen by TestBattery::for_range over the symbol's sampled values.
DistributionReport distribution_report(const MatrixFamily& family, const GltSymbol& kappa,
                                       SpectralMode mode, double tol);

struct FractionReport {
  std::vector<MultiIndex> schedule;
  std::vector<double> fraction;
  double tol = 0.0;
  bool pass = false;  // non-increasing (1e-12 slack) and last <= tol
};

/// Fraction of singular values above eps at every scheduled n.
FractionReport is_zero_distributed(const MatrixFamily& family, double eps, double tol);

struct SuProfile {
  std::vector<MultiIndex> schedule;
  std::vector<double> ms;
  std::vector<std::vector<double>> fraction;  // [n index][M index]
  std::vector<double> tail;                   // per M: max fraction over the tail half
  double tol = 0.0;
  bool pass = false;  // tail non-increasing in M (1e-12 slack) and tail.back() <= tol
};

SuProfile su_profile(const MatrixFamily& family, std::span<const double> ms, double tol);
/// Same, from precomputed singular values per scheduled n.
SuProfile su_profile_from_values(const std::vector<MultiIndex>& schedule,
                                 const std::vector<std::vector<double>>& singular_values,
                                 std::span<const double> ms, double tol);

struct SvdSplit {
  ComplexMatrix hat;    // the part carrying every sigma > M
  ComplexMatrix tilde;  // remainder, norm <= M
  std::size_t rank = 0;
};
SvdSplit svd_split(const ComplexMatrix& a, double m);

}  // namespace gltkit
