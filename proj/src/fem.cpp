#include "gltkit/fem.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gltkit/error.hpp"

namespace gltkit {

namespace {

// Cox-de Boor on an open knot vector; 0/0 terms are dropped. Index k is the
// 0-based position in the full basis.
double cox_de_boor(const std::vector<double>& t, std::size_t k, std::size_t deg, double x,
                   std::size_t span) {
  if (deg == 0) return k == span ? 1.0 : 0.0;
  double v = 0.0;
  const double left = t[k + deg] - t[k];
  if (left > 0.0) v += (x - t[k]) / left * cox_de_boor(t, k, deg - 1, x, span);
  const double right = t[k + deg + 1] - t[k + 1];
  if (right > 0.0) v += (t[k + deg + 1] - x) / right * cox_de_boor(t, k + 1, deg - 1, x, span);
  return v;
}

double cox_de_boor_deriv(const std::vector<double>& t, std::size_t k, std::size_t deg, double x,
                         std::size_t span) {
  double v = 0.0;
  const double p = static_cast<double>(deg);
  const double left = t[k + deg] - t[k];
  if (left > 0.0) v += p / left * cox_de_boor(t, k, deg - 1, x, span);
  const double right = t[k + deg + 1] - t[k + 1];
  if (right > 0.0) v -= p / right * cox_de_boor(t, k + 1, deg - 1, x, span);
  return v;
}

}  // namespace

BSplineBasis::BSplineBasis(std::size_t p, std::size_t m) : p_(p), m_(m) {
  if (p < 1 || p > kMaxSplineDegree)
    throw DomainError("spline degree " + std::to_string(p) + " outside 1.." +
                      std::to_string(kMaxSplineDegree));
  if (m < p) throw DomainError("need at least p subintervals");
  knots_.assign(p + 1, 0.0);
  for (std::size_t i = 1; i < m; ++i)
    knots_.push_back(static_cast<double>(i) / static_cast<double>(m));
  knots_.insert(knots_.end(), p + 1, 1.0);
}

double BSplineBasis::eval_full(std::size_t k, double x, int deriv) const {
  if (k < 1 || k > m_ + p_)
    throw DomainError("basis index " + std::to_string(k) + " outside 1.." +
                      std::to_string(m_ + p_));
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("spline evaluated outside [0,1]");
  // Knot span l with t_l <= x < t_{l+1}; x = 1 belongs to the last span.
  std::size_t cell = static_cast<std::size_t>(std::floor(x * static_cast<double>(m_)));
  if (cell >= m_) cell = m_ - 1;
  const std::size_t span = cell + p_;
  const std::size_t k0 = k - 1;
  if (k0 + p_ < span || k0 > span) return 0.0;
  return deriv == 0 ? cox_de_boor(knots_, k0, p_, x, span)
                    : cox_de_boor_deriv(knots_, k0, p_, x, span);
}

double BSplineBasis::eval(std::size_t j, double x, int deriv) const {
  if (j < 1 || j > dimension())
    throw DomainError("interior basis index " + std::to_string(j) + " outside 1.." +
                      std::to_string(dimension()));
  return eval_full(j + 1, x, deriv);
}

void gauss_legendre(std::size_t count, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(count, 0.0);
  weights.assign(count, 0.0);
  const double n = static_cast<double>(count);
  for (std::size_t i = 0; i < count; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= count; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    nodes[count - 1 - i] = x;
    weights[count - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

namespace {

ComplexMatrix galerkin(std::size_t m, std::size_t p, int deriv) {
  if (m < p + 1) throw DomainError("Galerkin matrices need m >= p + 1");
  const BSplineBasis basis(p, m);
  const std::size_t dim = basis.dimension();
  std::vector<double> gx, gw;
  gauss_legendre(p + 1, gx, gw);
  ComplexMatrix out(dim, dim);
  const double h = 1.0 / static_cast<double>(m);
  std::vector<double> values(p + 1);
  for (std::size_t cell = 0; cell < m; ++cell) {
    // Full-basis functions alive on this cell: cell+1 .. cell+p+1 (1-based);
    // interior index j = full - 1.
    for (std::size_t q = 0; q < gx.size(); ++q) {
      const double x = (static_cast<double>(cell) + 0.5 * (gx[q] + 1.0)) * h;
      const double w = 0.5 * h * gw[q];
      for (std::size_t a = 0; a <= p; ++a)
        values[a] = basis.eval_full(cell + 1 + a, x, deriv);
      for (std::size_t a = 0; a <= p; ++a) {
        const std::size_t ja = cell + a;  // interior index, 0 and dim+1 are boundary
        if (ja < 1 || ja > dim) continue;
        for (std::size_t b = 0; b <= p; ++b) {
          const std::size_t jb = cell + b;
          if (jb < 1 || jb > dim) continue;
          out(ja - 1, jb - 1) += w * (values[a] * values[b]);  // product first: exact symmetry
        }
      }
    }
  }
  return out;
}

TrigPoly interior_stencil(std::size_t p, int deriv) {
  auto read = [&](std::size_t m) {
    const ComplexMatrix a = galerkin(m, p, deriv);
    const double scale = deriv == 1 ? 1.0 / static_cast<double>(m) : static_cast<double>(m);
    const std::size_t mid = a.rows() / 2;
    std::vector<double> row;
    for (std::size_t c = mid - p; c <= mid + p; ++c) row.push_back(scale * a(mid, c).real());
    return row;
  };
  const std::size_t m = 4 * (p + 1);
  const auto row = read(m);
  const auto check = read(m + 1);
  for (std::size_t i = 0; i < row.size(); ++i)
    if (std::abs(row[i] - check[i]) > 1e-12)
      throw DomainError("interior stencil is not mesh independent");
  TrigPoly f(1, 1, 1);
  for (std::size_t i = 0; i < row.size(); ++i) {
    // Row mid, column mid + (i - p): coefficient f_{row - col} = f_{p - i}.
    const auto k = static_cast<std::int64_t>(p) - static_cast<std::int64_t>(i);
    f.set(MultiIndex{k}, ComplexMatrix{{row[i]}});
  }
  return f;
}

}  // namespace

ComplexMatrix stiffness(std::size_t m, std::size_t p) { return galerkin(m, p, 1); }
ComplexMatrix mass(std::size_t m, std::size_t p) { return galerkin(m, p, 0); }

TrigPoly symbol_fp(std::size_t p) { return interior_stencil(p, 1); }
TrigPoly symbol_hp(std::size_t p) { return interior_stencil(p, 0); }

ComplexMatrix poisson_matrix(const MultiIndex& ms, const MultiIndex& ps, bool normalized) {
  if (ms.size() != ps.size() || ms.empty())
    throw DomainError("mesh sizes and degrees need equal, non-zero lengths");
  const std::size_t d = ms.size();
  std::vector<ComplexMatrix> k(d), mm(d);
  for (std::size_t r = 0; r < d; ++r) {
    if (ms[r] < 1 || ps[r] < 1) throw DomainError("mesh sizes and degrees must be positive");
    const auto m = static_cast<std::size_t>(ms[r]);
    const auto p = static_cast<std::size_t>(ps[r]);
    k[r] = stiffness(m, p);
    mm[r] = mass(m, p);
    if (normalized) {
      k[r] *= 1.0 / static_cast<double>(m);
      mm[r] *= static_cast<double>(m);
    }
  }
  ComplexMatrix out;
  for (std::size_t r = 0; r < d; ++r) {
    std::vector<ComplexMatrix> slots;
    for (std::size_t l = 0; l < d; ++l) slots.push_back(l == r ? k[l] : mm[l]);
    ComplexMatrix term = kron_all(slots);
    if (r == 0)
      out = std::move(term);
    else
      out += term;
  }
  return out;
}

GltSymbol poisson_symbol(const MultiIndex& ps) {
  const std::size_t d = ps.size();
  if (d == 0) throw DomainError("degree list must be non-empty");
  GltSymbol kappa(d, 1, 1);
  for (std::size_t r = 0; r < d; ++r) {
    std::optional<TrigPoly> term;
    for (std::size_t l = 0; l < d; ++l) {
      const auto p = static_cast<std::size_t>(ps[l]);
      TrigPoly factor = l == r ? symbol_fp(p) : symbol_hp(p);
      term = term ? tp_trig(*term, factor) : factor;
    }
    kappa.add_term(CoeffFn::constant(d, 1.0), *term);
  }
  return kappa;
}

PoissonReport verify_poisson(const MultiIndex& ps, std::span<const std::size_t> sizes,
                             double tol) {
  // The family is indexed by matrix level sizes n_r = m + p_r - 2.
  MatrixFamily family;
  for (std::size_t m : sizes) {
    MultiIndex n = ps;
    for (std::size_t r = 0; r < n.size(); ++r) n[r] = static_cast<std::int64_t>(m) + ps[r] - 2;
    family.schedule.push_back(std::move(n));
  }
  family.generator = [ps](const MultiIndex& n) { return poisson_matrix(n - ps + MultiIndex::filled(ps.size(), 2), ps, true); };
  const GltSymbol kappa = poisson_symbol(ps);
  PoissonReport report;
  for (const auto& n : family.schedule)
    report.hermitian = report.hermitian && family.at(n).is_hermitian();
  report.sv = distribution_report(family, kappa, SpectralMode::Singular, tol);
  if (!report.hermitian) return report;
  report.eig = distribution_report(family, kappa, SpectralMode::Eigen, tol);
  report.pass = report.sv.pass && report.eig.pass;
  return report;
}

}  // namespace gltkit
