#include "gltkit/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <vector>

namespace gltkit {

enum class Op { Number, Var, Neg, Add, Sub, Mul, Div, Pow, Func };
enum class Fn { Sin, Cos, Exp, Abs, Floor, Step };

struct ExprNode {
  Op op = Op::Number;
  double value = 0.0;         // Number
  std::size_t var = 0;        // Var, 1-based
  long exponent = 1;          // Pow
  Fn fn = Fn::Sin;            // Func
  std::shared_ptr<const ExprNode> lhs, rhs;
};

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr number(double v) {
  auto n = std::make_shared<ExprNode>();
  n->op = Op::Number;
  n->value = v;
  return n;
}

NodePtr variable(std::size_t j) {
  auto n = std::make_shared<ExprNode>();
  n->op = Op::Var;
  n->var = j;
  return n;
}

NodePtr binary(Op op, NodePtr a, NodePtr b) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

NodePtr unary(Op op, NodePtr a) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->lhs = std::move(a);
  return n;
}

NodePtr func(Fn f, NodePtr a) {
  auto n = std::make_shared<ExprNode>();
  n->op = Op::Func;
  n->fn = f;
  n->lhs = std::move(a);
  return n;
}

NodePtr power(NodePtr a, long e) {
  auto n = std::make_shared<ExprNode>();
  n->op = Op::Pow;
  n->exponent = e;
  n->lhs = std::move(a);
  return n;
}

NodePtr shift_vars(const NodePtr& node, std::size_t offset) {
  if (!node) return node;
  if (node->op == Op::Var) return variable(node->var + offset);
  if (node->op == Op::Number) return node;
  auto copy = std::make_shared<ExprNode>(*node);
  copy->lhs = shift_vars(node->lhs, offset);
  copy->rhs = shift_vars(node->rhs, offset);
  return copy;
}

struct FnName {
  const char* name;
  Fn fn;
};
constexpr FnName kFunctions[] = {{"sin", Fn::Sin},   {"cos", Fn::Cos},     {"exp", Fn::Exp},
                                 {"abs", Fn::Abs},   {"floor", Fn::Floor}, {"step", Fn::Step}};

const char* fn_name(Fn f) {
  for (const auto& e : kFunctions)
    if (e.fn == f) return e.name;
  return "?";
}

class Parser {
 public:
  Parser(std::string_view text, std::size_t levels) : s_(text), levels_(levels) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  NodePtr expr() {
    NodePtr left = term();
    for (;;) {
      if (accept('+'))
        left = binary(Op::Add, left, term());
      else if (accept('-'))
        left = binary(Op::Sub, left, term());
      else
        return left;
    }
  }

  NodePtr term() {
    NodePtr left = factor();
    for (;;) {
      if (accept('*'))
        left = binary(Op::Mul, left, factor());
      else if (accept('/'))
        left = binary(Op::Div, left, factor());
      else
        return left;
    }
  }

  NodePtr factor() {
    NodePtr b = base();
    if (accept('^')) {
      skip_ws();
      const std::size_t start = pos_;
      if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
      const std::size_t digits = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ == digits) {
        pos_ = start;
        fail("expected integer exponent");
      }
      const long e = std::strtol(std::string(s_.substr(start, pos_ - start)).c_str(), nullptr, 10);
      b = power(b, e);
    }
    return b;
  }

  NodePtr base() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '-') {
      ++pos_;
      return unary(Op::Neg, base());
    }
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number_literal();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  NodePtr number_literal() {
    const std::size_t start = pos_;
    auto digits = [&] {
      const std::size_t from = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return pos_ - from;
    };
    std::size_t count = digits();
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      count += digits();
    }
    if (count == 0) fail("malformed number");
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      const std::size_t mark = pos_;
      ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
      if (digits() == 0) pos_ = mark;  // "2e" is 2 followed by an identifier; let that fail later
    }
    return number(std::strtod(std::string(s_.substr(start, pos_ - start)).c_str(), nullptr));
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    const std::string word(s_.substr(start, pos_ - start));

    if (word.size() > 1 && word[0] == 'x' &&
        word.find_first_not_of("0123456789", 1) == std::string::npos) {
      const std::size_t j = std::strtoul(word.c_str() + 1, nullptr, 10);
      if (j < 1 || j > levels_) {
        pos_ = start;
        fail("variable " + word + " outside x1..x" + std::to_string(levels_));
      }
      return variable(j);
    }
    for (const auto& entry : kFunctions) {
      if (word == entry.name) {
        expect('(');
        std::vector<NodePtr> args{expr()};
        while (accept(',')) args.push_back(expr());
        expect(')');
        if (args.size() != 1) {
          pos_ = start;
          fail(word + " takes 1 argument, got " + std::to_string(args.size()));
        }
        return func(entry.fn, args[0]);
      }
    }
    pos_ = start;
    fail("unknown identifier '" + word + "'");
  }

  std::string_view s_;
  std::size_t levels_;
  std::size_t pos_ = 0;
};

std::optional<double> eval(const ExprNode& n, std::span<const double> x) {
  auto finite = [](double v) -> std::optional<double> {
    if (!std::isfinite(v)) return std::nullopt;
    return v;
  };
  switch (n.op) {
    case Op::Number:
      return n.value;
    case Op::Var:
      return x[n.var - 1];
    case Op::Neg: {
      auto a = eval(*n.lhs, x);
      if (!a) return a;
      return -*a;
    }
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div: {
      auto a = eval(*n.lhs, x);
      if (!a) return a;
      auto b = eval(*n.rhs, x);
      if (!b) return b;
      if (n.op == Op::Add) return finite(*a + *b);
      if (n.op == Op::Sub) return finite(*a - *b);
      if (n.op == Op::Mul) return finite(*a * *b);
      if (*b == 0.0) return std::nullopt;
      return finite(*a / *b);
    }
    case Op::Pow: {
      auto a = eval(*n.lhs, x);
      if (!a) return a;
      if (*a == 0.0 && n.exponent < 0) return std::nullopt;
      return finite(std::pow(*a, static_cast<double>(n.exponent)));
    }
    case Op::Func: {
      auto a = eval(*n.lhs, x);
      if (!a) return a;
      switch (n.fn) {
        case Fn::Sin: return std::sin(*a);
        case Fn::Cos: return std::cos(*a);
        case Fn::Exp: return finite(std::exp(*a));
        case Fn::Abs: return std::abs(*a);
        case Fn::Floor: return std::floor(*a);
        case Fn::Step: return *a >= 0.0 ? 1.0 : 0.0;
      }
    }
  }
  return std::nullopt;
}

bool has_var(const ExprNode& n) {
  if (n.op == Op::Var) return true;
  return (n.lhs && has_var(*n.lhs)) || (n.rhs && has_var(*n.rhs));
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // Round-trip safe but noisy; prefer the shortest repr that parses back exactly.
  for (int digits = 1; digits <= 17; ++digits) {
    char shorter[40];
    std::snprintf(shorter, sizeof shorter, "%.*g", digits, v);
    if (std::strtod(shorter, nullptr) == v) return shorter;
  }
  return buf;
}

void print(const ExprNode& n, std::string& out) {
  switch (n.op) {
    case Op::Number:
      if (std::signbit(n.value)) {
        out += "-(";
        out += format_number(-n.value);
        out += ')';
      } else {
        out += format_number(n.value);
      }
      return;
    case Op::Var:
      out += 'x';
      out += std::to_string(n.var);
      return;
    case Op::Neg:
      out += "-(";
      print(*n.lhs, out);
      out += ')';
      return;
    case Op::Add:
    case Op::Sub:
    case Op::Mul:
    case Op::Div: {
      static constexpr char kSymbol[] = {'?', '?', '?', '+', '-', '*', '/'};
      out += '(';
      print(*n.lhs, out);
      out += ' ';
      out += kSymbol[static_cast<int>(n.op)];
      out += ' ';
      print(*n.rhs, out);
      out += ')';
      return;
    }
    case Op::Pow:
      out += '(';
      print(*n.lhs, out);
      out += ")^";
      out += std::to_string(n.exponent);
      return;
    case Op::Func:
      out += fn_name(n.fn);
      out += '(';
      print(*n.lhs, out);
      out += ')';
      return;
  }
}

void require_level(std::size_t levels, std::size_t j) {
  if (levels == 0) throw DomainError("coefficient function needs at least one level");
  if (j < 1 || j > levels)
    throw DomainError("coordinate x" + std::to_string(j) + " outside 1.." + std::to_string(levels));
}

}  // namespace

CoeffFn::CoeffFn() : root_(number(1.0)), levels_(1) {}

CoeffFn CoeffFn::parse(std::string_view text, std::size_t levels) {
  if (levels == 0) throw DomainError("coefficient function needs at least one level");
  return CoeffFn(Parser(text, levels).parse(), levels);
}

CoeffFn CoeffFn::constant(std::size_t levels, double value) {
  if (levels == 0) throw DomainError("coefficient function needs at least one level");
  return CoeffFn(number(value), levels);
}

CoeffFn CoeffFn::coordinate(std::size_t levels, std::size_t j) {
  require_level(levels, j);
  return CoeffFn(variable(j), levels);
}

CoeffFn CoeffFn::step_half(std::size_t levels, std::size_t j) {
  require_level(levels, j);
  return CoeffFn(func(Fn::Step, binary(Op::Sub, variable(j), number(0.5))), levels);
}

CoeffFn CoeffFn::staircase(std::size_t levels, std::size_t j, std::size_t steps) {
  require_level(levels, j);
  if (steps == 0) throw DomainError("staircase needs at least one step");
  const double m = static_cast<double>(steps);
  NodePtr cell = func(Fn::Floor, binary(Op::Mul, number(m), variable(j)));
  return CoeffFn(binary(Op::Div, binary(Op::Add, cell, number(0.5)), number(m)), levels);
}

bool CoeffFn::is_constant() const noexcept { return !has_var(*root_); }

std::optional<double> CoeffFn::evaluate(std::span<const double> x) const {
  if (x.size() != levels_)
    throw DomainError("coefficient function on " + std::to_string(levels_) +
                      " levels evaluated at a point with " + std::to_string(x.size()) +
                      " coordinates");
  return eval(*root_, x);
}

double CoeffFn::operator()(std::span<const double> x) const {
  auto v = evaluate(x);
  if (!v) {
    std::string where = "(";
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (k) where += ',';
      where += format_number(x[k]);
    }
    throw DomainError(to_string() + " is undefined at " + where + ")");
  }
  return *v;
}

std::string CoeffFn::to_string() const {
  std::string out;
  print(*root_, out);
  return out;
}

namespace {
void require_same_levels(const CoeffFn& a, const CoeffFn& b) {
  if (a.levels() != b.levels())
    throw DomainError("coefficient functions on " + std::to_string(a.levels()) + " and " +
                      std::to_string(b.levels()) + " levels cannot be combined pointwise");
}
}  // namespace

CoeffFn operator*(const CoeffFn& a, const CoeffFn& b) {
  require_same_levels(a, b);
  return CoeffFn(binary(Op::Mul, a.root_, b.root_), a.levels_);
}

CoeffFn operator+(const CoeffFn& a, const CoeffFn& b) {
  require_same_levels(a, b);
  return CoeffFn(binary(Op::Add, a.root_, b.root_), a.levels_);
}

CoeffFn operator-(const CoeffFn& a, const CoeffFn& b) {
  require_same_levels(a, b);
  return CoeffFn(binary(Op::Sub, a.root_, b.root_), a.levels_);
}

CoeffFn tensor(const CoeffFn& a, const CoeffFn& b) {
  return CoeffFn(binary(Op::Mul, a.root_, shift_vars(b.root_, a.levels_)), a.levels_ + b.levels_);
}

}  // namespace gltkit
