#pragma once

// Scalar coefficient functions a(x) on [0,1]^d, built from a small expression
// language:
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' integer)?
//   base   := number | var | func '(' expr ')' | '(' expr ')' | '-' base
//   var    := 'x' integer            (1-based level index)
//   func   := 'sin' | 'cos' | 'exp' | 'abs' | 'floor' | 'step'
//
// step(t) is 1 for t >= 0 and 0 otherwise. Division is guarded: a zero
// denominator (or any non-finite intermediate) makes evaluate() return nullopt
// instead of a value.

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "gltkit/error.hpp"

namespace gltkit {

class ParseError : public DomainError {
 public:
  ParseError(const std::string& message, std::size_t position)
      : DomainError(message + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

struct ExprNode;

class CoeffFn {
 public:
  /// The constant 1 on one level.
  CoeffFn();

  static CoeffFn parse(std::string_view text, std::size_t levels);
  static CoeffFn constant(std::size_t levels, double value);
  /// x_j, 1-based.
  static CoeffFn coordinate(std::size_t levels, std::size_t j);
  /// 1 on {x_j >= 1/2}, 0 elsewhere.
  static CoeffFn step_half(std::size_t levels, std::size_t j);
  /// (floor(m x_j) + 1/2) / m: the m-step midpoint staircase of x_j.
  static CoeffFn staircase(std::size_t levels, std::size_t j, std::size_t steps);

  std::size_t levels() const noexcept { return levels_; }
  /// No variable occurs in the expression.
  bool is_constant() const noexcept;

  std::optional<double> evaluate(std::span<const double> x) const;
  /// Throws DomainError at a guarded singularity.
  double operator()(std::span<const double> x) const;

  /// Fully parenthesised; parse(to_string()) reproduces the same tree.
  std::string to_string() const;

  /// Pointwise product; both on the same number of levels.
  friend CoeffFn operator*(const CoeffFn& a, const CoeffFn& b);
  friend CoeffFn operator+(const CoeffFn& a, const CoeffFn& b);
  friend CoeffFn operator-(const CoeffFn& a, const CoeffFn& b);

  /// (a (x) b)(x_1, x_2) = a(x_1) b(x_2); b's variables are shifted past a's.
  friend CoeffFn tensor(const CoeffFn& a, const CoeffFn& b);

 private:
  CoeffFn(std::shared_ptr<const ExprNode> root, std::size_t levels)
      : root_(std::move(root)), levels_(levels) {}

  std::shared_ptr<const ExprNode> root_;
  std::size_t levels_ = 1;
};

}  // namespace gltkit
