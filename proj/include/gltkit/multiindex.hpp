#pragma once

// Multi-indices and the lexicographic ordering of index ranges {1,...,m}.
//
// Every multilevel matrix in this library lays out its rows and columns by
// lex_rank; there is no second implementation of that ordering anywhere.
// Public positions are 1-based.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace gltkit {

class MultiIndex {
 public:
  using value_type = std::int64_t;

  MultiIndex() = default;
  MultiIndex(std::initializer_list<value_type> components) : c_(components) {}
  explicit MultiIndex(std::vector<value_type> components) : c_(std::move(components)) {}

  static MultiIndex ones(std::size_t d) { return MultiIndex(std::vector<value_type>(d, 1)); }
  static MultiIndex zeros(std::size_t d) { return MultiIndex(std::vector<value_type>(d, 0)); }
  /// (v, v, ..., v) of length d.
  static MultiIndex filled(std::size_t d, value_type v) {
    return MultiIndex(std::vector<value_type>(d, v));
  }

  std::size_t size() const noexcept { return c_.size(); }
  bool empty() const noexcept { return c_.empty(); }
  value_type operator[](std::size_t k) const { return c_[k]; }
  value_type& operator[](std::size_t k) { return c_[k]; }
  std::span<const value_type> components() const noexcept { return c_; }
  auto begin() const noexcept { return c_.begin(); }
  auto end() const noexcept { return c_.end(); }

  bool is_positive() const noexcept;

  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

  MultiIndex operator+(const MultiIndex& other) const;
  MultiIndex operator-(const MultiIndex& other) const;
  MultiIndex operator-() const;

 private:
  std::vector<value_type> c_;
};

/// Largest N(m) accepted anywhere in the library.
inline constexpr std::int64_t kMaxIndexRange = std::int64_t{1} << 31;

/// N(m) = m_1 m_2 ... m_d. Throws DomainError unless m is non-empty and positive,
/// and when the product exceeds kMaxIndexRange.
std::size_t n_of(const MultiIndex& m);

/// 1-based position of i in the lexicographic enumeration of {1,...,m}.
std::size_t lex_rank(const MultiIndex& i, const MultiIndex& m);

/// Inverse of lex_rank.
MultiIndex lex_unrank(std::size_t r, const MultiIndex& m);

MultiIndex concat(std::span<const MultiIndex> parts);
MultiIndex concat(const MultiIndex& a, const MultiIndex& b);
std::vector<MultiIndex> split(const MultiIndex& i, std::span<const std::size_t> lengths);

/// "(1,2,3)"
std::string to_string(const MultiIndex& i);

/// Calls fn(i) for every i in {1,...,m}, lexicographically; i is reused between calls.
template <class Fn>
void for_each_index(const MultiIndex& m, Fn&& fn) {
  const std::size_t total = n_of(m);
  MultiIndex i = MultiIndex::ones(m.size());
  for (std::size_t r = 0; r < total; ++r) {
    fn(static_cast<const MultiIndex&>(i));
    for (std::size_t k = m.size(); k-- > 0;) {
      if (i[k] < m[k]) {
        ++i[k];
        break;
      }
      i[k] = 1;
    }
  }
}

}  // namespace gltkit
