#include "gltkit/multiindex.hpp"

#include <sstream>

#include "gltkit/error.hpp"

namespace gltkit {

bool MultiIndex::is_positive() const noexcept {
  for (auto v : c_)
    if (v < 1) return false;
  return true;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (size() != other.size()) throw DomainError("multi-index length mismatch");
  MultiIndex out = *this;
  for (std::size_t k = 0; k < size(); ++k) out.c_[k] += other.c_[k];
  return out;
}

MultiIndex MultiIndex::operator-(const MultiIndex& other) const {
  if (size() != other.size()) throw DomainError("multi-index length mismatch");
  MultiIndex out = *this;
  for (std::size_t k = 0; k < size(); ++k) out.c_[k] -= other.c_[k];
  return out;
}

MultiIndex MultiIndex::operator-() const {
  MultiIndex out = *this;
  for (auto& v : out.c_) v = -v;
  return out;
}

std::size_t n_of(const MultiIndex& m) {
  if (m.empty()) throw DomainError("N(m): empty multi-index");
  std::int64_t prod = 1;
  for (auto v : m) {
    if (v < 1) throw DomainError("N(m): non-positive component in " + to_string(m));
    if (prod > kMaxIndexRange / v) throw DomainError("N(m): range too large for " + to_string(m));
    prod *= v;
  }
  if (prod > kMaxIndexRange) throw DomainError("N(m): range too large for " + to_string(m));
  return static_cast<std::size_t>(prod);
}

std::size_t lex_rank(const MultiIndex& i, const MultiIndex& m) {
  n_of(m);
  if (i.size() != m.size())
    throw DomainError("lex_rank: length mismatch " + to_string(i) + " vs " + to_string(m));
  std::size_t r = 0;
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (i[k] < 1 || i[k] > m[k])
      throw DomainError("lex_rank: " + to_string(i) + " outside {1,...," + to_string(m) + "}");
    r = r * static_cast<std::size_t>(m[k]) + static_cast<std::size_t>(i[k] - 1);
  }
  return r + 1;
}

MultiIndex lex_unrank(std::size_t r, const MultiIndex& m) {
  const std::size_t total = n_of(m);
  if (r < 1 || r > total)
    throw DomainError("lex_unrank: rank " + std::to_string(r) + " outside 1.." +
                      std::to_string(total));
  std::vector<MultiIndex::value_type> c(m.size());
  std::size_t rest = r - 1;
  for (std::size_t k = m.size(); k-- > 0;) {
    const auto mk = static_cast<std::size_t>(m[k]);
    c[k] = static_cast<MultiIndex::value_type>(rest % mk) + 1;
    rest /= mk;
  }
  return MultiIndex(std::move(c));
}

MultiIndex concat(std::span<const MultiIndex> parts) {
  std::vector<MultiIndex::value_type> c;
  for (const auto& p : parts) c.insert(c.end(), p.begin(), p.end());
  return MultiIndex(std::move(c));
}

MultiIndex concat(const MultiIndex& a, const MultiIndex& b) {
  const MultiIndex parts[] = {a, b};
  return concat(parts);
}

std::vector<MultiIndex> split(const MultiIndex& i, std::span<const std::size_t> lengths) {
  std::size_t total = 0;
  for (auto l : lengths) total += l;
  if (total != i.size())
    throw DomainError("split: lengths sum to " + std::to_string(total) + " but index has " +
                      std::to_string(i.size()) + " components");
  std::vector<MultiIndex> out;
  out.reserve(lengths.size());
  auto it = i.begin();
  for (auto l : lengths) {
    out.emplace_back(std::vector<MultiIndex::value_type>(it, it + static_cast<std::ptrdiff_t>(l)));
    it += static_cast<std::ptrdiff_t>(l);
  }
  return out;
}

std::string to_string(const MultiIndex& i) {
  std::ostringstream os;
  os << '(';
  for (std::size_t k = 0; k < i.size(); ++k) os << (k ? "," : "") << i[k];
  os << ')';
  return os.str();
}

}  // namespace gltkit
