#include <gtest/gtest.h>

#include <cmath>

#include "gltkit/expr.hpp"
#include "gltkit/rng.hpp"

using namespace gltkit;

namespace {

double at(const CoeffFn& f, std::initializer_list<double> x) {
  return f(std::span<const double>(x.begin(), x.size()));
}

}  // namespace

TEST(Parse, Examples) {
  EXPECT_EQ(at(CoeffFn::parse("1", 1), {0.7}), 1.0);
  EXPECT_DOUBLE_EQ(at(CoeffFn::parse("x1*(1-x1)", 1), {0.5}), 0.25);
  EXPECT_NEAR(at(CoeffFn::parse("sin(3.141592653589793*x2)", 2), {0.1, 0.5}), 1.0, 1e-15);
}

TEST(Parse, OperatorsAndPrecedence) {
  EXPECT_DOUBLE_EQ(at(CoeffFn::parse("1+2*3", 1), {0}), 7);
  EXPECT_DOUBLE_EQ(at(CoeffFn::parse("(1+2)*3", 1), {0}), 9);
  EXPECT_DOUBLE_EQ(at(CoeffFn::parse("8/2/2", 1), {0}), 2);
  EXPECT_DOUBLE_EQ(at(CoeffFn::parse("2-3-4", 1), {0}), -5);
  EXPECT_DOUBLE_EQ(at(CoeffFn::parse("-x1^2", 1), {3}), 9);  // unary minus binds to the base
  EXPECT_DOUBLE_EQ(at(CoeffFn::parse("-(x1^2)", 1), {3}), -9);
  EXPECT_DOUBLE_EQ(at(CoeffFn::parse("0-x1^2", 1), {3}), -9);
  EXPECT_DOUBLE_EQ(at(CoeffFn::parse("x1^-1", 1), {4}), 0.25);
  EXPECT_DOUBLE_EQ(at(CoeffFn::parse("2.5e-1*x1", 1), {4}), 1.0);
  EXPECT_DOUBLE_EQ(at(CoeffFn::parse("abs(x1-1)+floor(2.5)+step(x1-0.5)", 1), {0.5}), 3.5);
  EXPECT_DOUBLE_EQ(at(CoeffFn::parse(" exp( 0 ) + cos(0) ", 1), {0}), 2);
}

TEST(Parse, ErrorsCarryPositions) {
  try {
    CoeffFn::parse("1 + * 2", 1);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
  EXPECT_THROW(CoeffFn::parse("y1", 1), ParseError);
  EXPECT_THROW(CoeffFn::parse("x2", 1), ParseError);
  EXPECT_THROW(CoeffFn::parse("x0", 1), ParseError);
  EXPECT_THROW(CoeffFn::parse("tan(x1)", 1), ParseError);
  EXPECT_THROW(CoeffFn::parse("sin(x1, x1)", 1), ParseError);
  EXPECT_THROW(CoeffFn::parse("sin()", 1), ParseError);
  EXPECT_THROW(CoeffFn::parse("(1", 1), ParseError);
  EXPECT_THROW(CoeffFn::parse("1)", 1), ParseError);
  EXPECT_THROW(CoeffFn::parse("", 1), ParseError);
  EXPECT_THROW(CoeffFn::parse("x1^0.5", 1), ParseError);
}

TEST(Evaluate, GuardedSingularities) {
  const auto f = CoeffFn::parse("1/(x1-0.5)", 1);
  const double half[] = {0.5}, other[] = {0.75};
  EXPECT_FALSE(f.evaluate(half).has_value());
  EXPECT_THROW(f(half), DomainError);
  EXPECT_DOUBLE_EQ(*f.evaluate(other), 4.0);
  const double zero[] = {0.0};
  EXPECT_FALSE(CoeffFn::parse("x1^-2", 1).evaluate(zero).has_value());
  EXPECT_FALSE(CoeffFn::parse("exp(1000*x1)", 1).evaluate(std::span<const double>(std::initializer_list<double>{1.0}.begin(), 1)).has_value());
}

TEST(Evaluate, WrongArity) {
  const double x[] = {0.1, 0.2};
  EXPECT_THROW(CoeffFn::parse("x1", 1)(x), DomainError);
}

TEST(Builtins, StepStaircaseCoordinate) {
  EXPECT_EQ(at(CoeffFn::step_half(1, 1), {0.49}), 0.0);
  EXPECT_EQ(at(CoeffFn::step_half(1, 1), {0.5}), 1.0);
  const auto s = CoeffFn::staircase(2, 2, 4);
  EXPECT_DOUBLE_EQ(at(s, {0.9, 0.3}), 0.375);
  EXPECT_DOUBLE_EQ(at(s, {0.9, 0.25}), 0.375);
  EXPECT_DOUBLE_EQ(at(s, {0.9, 0.0}), 0.125);
  EXPECT_EQ(at(CoeffFn::coordinate(3, 2), {0.1, 0.2, 0.3}), 0.2);
  EXPECT_TRUE(CoeffFn::constant(2, 3.0).is_constant());
  EXPECT_FALSE(CoeffFn::coordinate(2, 1).is_constant());
  EXPECT_TRUE(CoeffFn::parse("sin(2)*3", 1).is_constant());
}

TEST(Algebra, ProductSumAndTensor) {
  const auto a = CoeffFn::parse("x1+1", 1), b = CoeffFn::parse("2*x1", 1);
  EXPECT_DOUBLE_EQ(at(a * b, {0.5}), 1.5);
  EXPECT_DOUBLE_EQ(at(a + b, {0.5}), 2.5);
  EXPECT_DOUBLE_EQ(at(a - b, {0.5}), 0.5);
  const auto t = tensor(a, b);
  EXPECT_EQ(t.levels(), 2u);
  EXPECT_DOUBLE_EQ(at(t, {0.5, 0.25}), 1.5 * 0.5);
  EXPECT_THROW(a * CoeffFn::coordinate(2, 1), DomainError);
}

TEST(RoundTrip, PrintThenParseEvaluatesIdentically) {
  const char* sources[] = {"x1*(1-x1)",
                           "-x1^2+3/(1+x2)",
                           "exp(-x1)*cos(3*x2)-abs(x1-0.3)",
                           "floor(4*x1)/4+step(x2-0.5)",
                           "-(-2.5e-3)*x1^-1",
                           "0.1+0.2",
                           "sin(x1)^3-(x2-x1)*(x2+x1)"};
  SplitMix64 rng(5);
  for (const char* src : sources) {
    const auto e = CoeffFn::parse(src, 2);
    const auto printed = e.to_string();
    const auto back = CoeffFn::parse(printed, 2);
    EXPECT_EQ(back.to_string(), printed) << src;
    for (int p = 0; p < 100; ++p) {
      const double x[] = {rng.uniform(), rng.uniform()};
      const auto u = e.evaluate(x), v = back.evaluate(x);
      ASSERT_EQ(u.has_value(), v.has_value());
      if (u) EXPECT_EQ(*u, *v) << src << " printed as " << printed;
    }
  }
}
