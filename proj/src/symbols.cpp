#include "gltkit/symbols.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gltkit/error.hpp"

namespace gltkit {

namespace {

std::string dims(std::size_t s, std::size_t t) {
  return std::to_string(s) + "x" + std::to_string(t);
}

}  // namespace

TrigPoly::TrigPoly(std::size_t levels, std::size_t s, std::size_t t)
    : levels_(levels), s_(s), t_(t) {
  if (levels == 0) throw DomainError("trigonometric polynomial needs at least one level");
  if (s == 0 || t == 0) throw DomainError("trigonometric polynomial blocks must be non-empty");
}

TrigPoly TrigPoly::scalar(std::size_t levels,
                          std::span<const std::pair<MultiIndex, Complex>> terms) {
  TrigPoly f(levels, 1, 1);
  for (const auto& [k, c] : terms) f.add_to(k, ComplexMatrix{{c}});
  return f;
}

TrigPoly TrigPoly::constant(std::size_t levels, const ComplexMatrix& c) {
  TrigPoly f(levels, c.rows(), c.cols());
  f.set(MultiIndex::zeros(levels), c);
  return f;
}

TrigPoly TrigPoly::monomial(const MultiIndex& k) {
  TrigPoly f(k.size(), 1, 1);
  f.set(k, ComplexMatrix{{1.0}});
  return f;
}

TrigPoly TrigPoly::laplacian() { return scalar(1, {{{0}, 2.0}, {{1}, -1.0}, {{-1}, -1.0}}); }

void TrigPoly::check_key(const MultiIndex& k) const {
  if (k.size() != levels_)
    throw DomainError("frequency " + to_string(k) + " does not have " + std::to_string(levels_) +
                      " components");
}

void TrigPoly::check_block(const ComplexMatrix& b) const {
  if (b.rows() != s_ || b.cols() != t_)
    throw DomainError("coefficient block is " + dims(b.rows(), b.cols()) + ", expected " +
                      dims(s_, t_));
}

ComplexMatrix TrigPoly::coeff(const MultiIndex& k) const {
  check_key(k);
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? ComplexMatrix(s_, t_) : it->second;
}

const ComplexMatrix* TrigPoly::find(const MultiIndex& k) const {
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? nullptr : &it->second;
}

void TrigPoly::set(const MultiIndex& k, ComplexMatrix block) {
  check_key(k);
  check_block(block);
  coeffs_[k] = std::move(block);
}

void TrigPoly::add_to(const MultiIndex& k, const ComplexMatrix& block) {
  check_key(k);
  check_block(block);
  auto [it, inserted] = coeffs_.try_emplace(k, block);
  if (!inserted) it->second += block;
}

MultiIndex TrigPoly::bandwidth() const {
  MultiIndex b = MultiIndex::zeros(levels_);
  for (const auto& [k, _] : coeffs_)
    for (std::size_t r = 0; r < levels_; ++r) b[r] = std::max(b[r], std::abs(k[r]));
  return b;
}

ComplexMatrix TrigPoly::eval(std::span<const double> theta) const {
  if (theta.size() != levels_)
    throw DomainError("point has " + std::to_string(theta.size()) + " coordinates, symbol has " +
                      std::to_string(levels_) + " levels");
  ComplexMatrix out(s_, t_);
  for (const auto& [k, block] : coeffs_) {
    double phase = 0.0;
    for (std::size_t r = 0; r < levels_; ++r) phase += static_cast<double>(k[r]) * theta[r];
    const Complex w = std::polar(1.0, phase);
    auto dst = out.data();
    auto src = block.data();
    for (std::size_t e = 0; e < dst.size(); ++e) dst[e] += w * src[e];
  }
  return out;
}

bool TrigPoly::has_hermitian_symmetry(double tol) const {
  if (s_ != t_) return false;
  for (const auto& [k, block] : coeffs_) {
    if (max_abs_diff(coeff(-k), block.adjoint()) > tol) return false;
  }
  return true;
}

TrigPoly TrigPoly::scaled(Complex alpha) const {
  TrigPoly out(levels_, s_, t_);
  for (const auto& [k, block] : coeffs_) out.set(k, alpha * block);
  return out;
}

TrigPoly trig_add(const TrigPoly& f, const TrigPoly& g) {
  if (f.levels() != g.levels() || f.block_rows() != g.block_rows() ||
      f.block_cols() != g.block_cols())
    throw DomainError("cannot add trigonometric polynomials of different shapes");
  TrigPoly out = f;
  for (const auto& [k, block] : g.coeffs()) out.add_to(k, block);
  return out;
}

TrigPoly trig_mul(const TrigPoly& f, const TrigPoly& g) {
  if (f.levels() != g.levels())
    throw DomainError("cannot multiply trigonometric polynomials on different level counts");
  if (f.block_cols() != g.block_rows())
    throw DomainError("block product " + dims(f.block_rows(), f.block_cols()) + " times " +
                      dims(g.block_rows(), g.block_cols()) + " is undefined");
  TrigPoly out(f.levels(), f.block_rows(), g.block_cols());
  for (const auto& [k1, b1] : f.coeffs())
    for (const auto& [k2, b2] : g.coeffs()) out.add_to(k1 + k2, b1 * b2);
  return out;
}

TrigPoly tp_trig(const TrigPoly& f1, const TrigPoly& f2) {
  TrigPoly out(f1.levels() + f2.levels(), f1.block_rows() * f2.block_rows(),
               f1.block_cols() * f2.block_cols());
  for (const auto& [k1, b1] : f1.coeffs())
    for (const auto& [k2, b2] : f2.coeffs()) out.set(concat(k1, k2), kron(b1, b2));
  return out;
}

ComplexMatrix fourier_coeff_numeric(const MatrixFunction& g, const MultiIndex& k,
                                    std::size_t nodes_per_dim) {
  if (nodes_per_dim < 2) throw DomainError("quadrature needs at least 2 nodes per dimension");
  const std::size_t d = k.size();
  if (d == 0) throw DomainError("frequency must have at least one component");
  const double h = 2.0 * std::numbers::pi / static_cast<double>(nodes_per_dim);
  std::vector<double> theta(d);
  ComplexMatrix acc;
  std::size_t count = 0;
  for_each_index(MultiIndex::filled(d, static_cast<std::int64_t>(nodes_per_dim)),
                 [&](const MultiIndex& j) {
                   double phase = 0.0;
                   for (std::size_t r = 0; r < d; ++r) {
                     theta[r] = -std::numbers::pi + h * static_cast<double>(j[r] - 1);
                     phase -= static_cast<double>(k[r]) * theta[r];
                   }
                   ComplexMatrix v = g(theta);
                   v *= std::polar(1.0, phase);
                   if (count++ == 0)
                     acc = std::move(v);
                   else
                     acc += v;
                 });
  acc *= 1.0 / static_cast<double>(count);
  return acc;
}

TrigPoly fourier_truncate(const MatrixFunction& g, std::size_t levels, std::size_t bandwidth,
                          std::size_t nodes_per_dim, double drop_tol) {
  const auto b = static_cast<std::int64_t>(bandwidth);
  std::optional<TrigPoly> out;
  for_each_index(MultiIndex::filled(levels, 2 * b + 1), [&](const MultiIndex& j) {
    MultiIndex k = j - MultiIndex::filled(levels, b + 1);
    ComplexMatrix c = fourier_coeff_numeric(g, k, nodes_per_dim);
    if (!out) out.emplace(levels, c.rows(), c.cols());
    if (c.max_abs() > drop_tol) out->set(k, std::move(c));
  });
  return *out;
}

GltSymbol::GltSymbol(std::size_t levels, std::size_t s, std::size_t t)
    : levels_(levels), s_(s), t_(t) {
  if (levels == 0) throw DomainError("symbol needs at least one level");
  if (s == 0 || t == 0) throw DomainError("symbol blocks must be non-empty");
}

GltSymbol GltSymbol::from_trig(TrigPoly f) {
  return single(CoeffFn::constant(f.levels(), 1.0), std::move(f));
}

GltSymbol GltSymbol::from_coeff(CoeffFn a, std::size_t s) {
  const std::size_t d = a.levels();
  return single(std::move(a), TrigPoly::constant(d, ComplexMatrix::identity(s)));
}

GltSymbol GltSymbol::single(CoeffFn a, TrigPoly f) {
  GltSymbol k(f.levels(), f.block_rows(), f.block_cols());
  k.add_term(std::move(a), std::move(f));
  return k;
}

void GltSymbol::add_term(CoeffFn a, TrigPoly f) {
  if (a.levels() != levels_ || f.levels() != levels_)
    throw DomainError("symbol term levels do not match the symbol's " + std::to_string(levels_));
  if (f.block_rows() != s_ || f.block_cols() != t_)
    throw DomainError("symbol term is " + dims(f.block_rows(), f.block_cols()) +
                      ", symbol is " + dims(s_, t_));
  terms_.push_back({std::move(a), std::move(f)});
}

std::optional<ComplexMatrix> GltSymbol::try_eval(std::span<const double> x,
                                                 std::span<const double> theta) const {
  ComplexMatrix out(s_, t_);
  for (const auto& term : terms_) {
    auto a = term.a.evaluate(x);
    if (!a) return std::nullopt;
    if (*a == 0.0) continue;
    ComplexMatrix v = term.f.eval(theta);
    v *= *a;
    out += v;
  }
  return out;
}

ComplexMatrix GltSymbol::eval(std::span<const double> x, std::span<const double> theta) const {
  ComplexMatrix out(s_, t_);
  for (const auto& term : terms_) {
    const double a = term.a(x);
    ComplexMatrix v = term.f.eval(theta);
    v *= a;
    out += v;
  }
  return out;
}

bool GltSymbol::is_x_independent() const noexcept {
  for (const auto& term : terms_)
    if (!term.a.is_constant()) return false;
  return true;
}

bool GltSymbol::is_hermitian() const {
  if (s_ != t_) return false;
  for (const auto& term : terms_)
    if (!term.f.has_hermitian_symmetry(0.0)) return false;
  return true;
}

GltSymbol symbol_add(const GltSymbol& k1, const GltSymbol& k2) {
  if (k1.levels() != k2.levels() || k1.block_rows() != k2.block_rows() ||
      k1.block_cols() != k2.block_cols())
    throw DomainError("cannot add symbols of different shapes");
  GltSymbol out = k1;
  for (const auto& term : k2.terms()) out.add_term(term.a, term.f);
  return out;
}

GltSymbol symbol_scale(Complex alpha, const GltSymbol& k) {
  GltSymbol out(k.levels(), k.block_rows(), k.block_cols());
  for (const auto& term : k.terms()) out.add_term(term.a, term.f.scaled(alpha));
  return out;
}

GltSymbol symbol_mul(const GltSymbol& k1, const GltSymbol& k2) {
  if (k1.levels() != k2.levels())
    throw DomainError("cannot multiply symbols on different level counts");
  if (k1.block_cols() != k2.block_rows())
    throw DomainError("symbol product " + dims(k1.block_rows(), k1.block_cols()) + " times " +
                      dims(k2.block_rows(), k2.block_cols()) + " is undefined");
  GltSymbol out(k1.levels(), k1.block_rows(), k2.block_cols());
  for (const auto& u : k1.terms())
    for (const auto& v : k2.terms()) out.add_term(u.a * v.a, trig_mul(u.f, v.f));
  return out;
}

GltSymbol symbol_tensor(const GltSymbol& k1, const GltSymbol& k2) {
  GltSymbol out(k1.levels() + k2.levels(), k1.block_rows() * k2.block_rows(),
                k1.block_cols() * k2.block_cols());
  for (const auto& u : k1.terms())
    for (const auto& v : k2.terms()) out.add_term(tensor(u.a, v.a), tp_trig(u.f, v.f));
  return out;
}

GltSymbol symbol_tensor_all(std::span<const GltSymbol> ks) {
  if (ks.empty()) throw DomainError("tensor product of an empty symbol list");
  GltSymbol out = ks[0];
  for (std::size_t r = 1; r < ks.size(); ++r) out = symbol_tensor(out, ks[r]);
  return out;
}

}  // namespace gltkit
