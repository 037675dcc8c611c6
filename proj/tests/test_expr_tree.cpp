#include <gtest/gtest.h>

#include <cmath>

#include "lincheck/errors.hpp"
#include "lincheck/symbolic/expr_tree.hpp"

using namespace lincheck::sym;

namespace {

ExprTree c(long v) { return ExprTree::constant(BigRational(v)); }
const ExprTree x = ExprTree::variable(Var::X);
const ExprTree y = ExprTree::variable(Var::Y);

}  // namespace

TEST(Parse, ExampleCoefficients) {
  EXPECT_EQ(parse_expr("-6/x^2"), ExprTree::quotient(ExprTree::negate(c(6)), ExprTree::power(x, 2)));
  EXPECT_EQ(parse_expr("0"), c(0));
  EXPECT_EQ(parse_expr("9*y^2"), ExprTree::product(c(9), ExprTree::power(y, 2)));
}

TEST(Parse, PrecedenceAndAssociativity) {
  EXPECT_EQ(parse_expr("1-x-y"), ExprTree::difference(ExprTree::difference(c(1), x), y));
  EXPECT_EQ(parse_expr("x/y/2"), ExprTree::quotient(ExprTree::quotient(x, y), c(2)));
  EXPECT_EQ(parse_expr("x+y*2"), ExprTree::sum(x, ExprTree::product(y, c(2))));
  EXPECT_EQ(parse_expr("x^2^3"), ExprTree::power(ExprTree::power(x, 2), 3));
  // Unary minus binds tighter than ^.
  EXPECT_EQ(parse_expr("-x^2"), ExprTree::power(ExprTree::negate(x), 2));
  EXPECT_EQ(parse_expr("x^-2"), ExprTree::power(x, -2));
  EXPECT_EQ(parse_expr("  x *\t( y + 1 ) "), parse_expr("x*(y+1)"));
}

TEST(Parse, Numbers) {
  EXPECT_EQ(parse_expr("0.25"), ExprTree::constant(BigRational(1, 4)));
  EXPECT_EQ(parse_expr("010"), c(10));
  EXPECT_EQ(to_rational(parse_expr("3/4")), RationalExpr(BigRational(3, 4)));
}

TEST(Parse, FunctionsAndConstants) {
  ExprTree e = parse_expr("c1*exp(-y-x)+c2*exp(y-x)", {"c1", "c2"});
  EXPECT_TRUE(e.contains_transcendental());
  EXPECT_EQ(e.symbols(), (std::set<std::string>{"c1", "c2"}));
}

TEST(Parse, Errors) {
  try {
    parse_expr("x + * y");
    FAIL();
  } catch (const lincheck::SyntaxError& err) {
    EXPECT_EQ(err.position(), 4u);
    EXPECT_FALSE(err.expected().empty());
  }
  try {
    parse_expr("x + z");
    FAIL();
  } catch (const lincheck::UnknownSymbol& err) {
    EXPECT_EQ(err.position(), 4u);
    EXPECT_EQ(err.name(), "z");
  }
  EXPECT_THROW(parse_expr("x^y"), lincheck::SyntaxError);
  EXPECT_THROW(parse_expr("x^1.5"), lincheck::SyntaxError);
  EXPECT_THROW(parse_expr("(x"), lincheck::SyntaxError);
  EXPECT_THROW(parse_expr("sin x"), lincheck::SyntaxError);
  EXPECT_THROW(parse_expr(""), lincheck::SyntaxError);
  EXPECT_THROW(parse_expr("x $ y"), lincheck::SyntaxError);
  EXPECT_THROW(parse_expr("x/0"), lincheck::DivisionByZero);
  EXPECT_THROW(parse_expr("log(0)"), lincheck::InvalidArgument);
}

TEST(ToRational, Rejections) {
  EXPECT_THROW(to_rational(parse_expr("sin(y)")), lincheck::NotRational);
  EXPECT_THROW(to_rational(parse_expr("c1*x", {"c1"})), lincheck::UnboundSymbol);
  EXPECT_THROW(to_rational(parse_expr("1/(x-x)")), lincheck::DivisionByZero);
  EXPECT_EQ(to_rational(parse_expr("c1*x", {"c1"}), Bindings{{"c1", BigRational(2)}}),
            2 * RationalExpr::variable(Var::X));
}

TEST(Print, RoundTripsStructurally) {
  for (const char* s : {"-6/x^2", "-x^2", "-(x^2)", "x-(y-1)", "x/(y*2)", "x*(y/2)", "(x+y)^3",
                        "x^-2", "c1*exp(-y-x)", "-(-x)", "sqrt(1+x^2)*cos(y)", "(-1/2)*x"}) {
    ExprTree e = parse_expr(s, {"c1"});
    EXPECT_EQ(parse_expr(to_string(e), {"c1"}), e) << s << " -> " << to_string(e);
  }
}

TEST(DiffTree, ChainRule) {
  ExprTree d = diff_tree(parse_expr("x*cos(y)"), Var::Y);
  EXPECT_NEAR(eval_numeric(d, 2.0, 0.3), -2.0 * std::sin(0.3), 1e-15);
  EXPECT_EQ(to_string(d), "-(x*sin(y))");
  EXPECT_EQ(diff_tree(x, Var::X), c(1));
  ExprTree e = parse_expr("exp(-y-x)");
  ExprTree de = diff_tree(e, Var::X);
  EXPECT_EQ(de, ExprTree::negate(e));
}

TEST(DiffTree, AgreesWithRationalDiff) {
  for (const char* s : {"(x^2-y)/(x*y+1)", "x^-3*y", "-6/x^2", "(1+x)^4/(y-x)^2"}) {
    ExprTree e = parse_expr(s);
    for (Var v : {Var::X, Var::Y}) EXPECT_EQ(to_rational(diff_tree(e, v)), diff(to_rational(e), v)) << s;
  }
}

TEST(EvalNumeric, Basics) {
  EXPECT_DOUBLE_EQ(eval_numeric(parse_expr("-6/x^2"), 2.0, 0.0), -1.5);
  EXPECT_DOUBLE_EQ(eval_numeric(parse_expr("x*cos(y)"), 1.0, 0.0), 1.0);
  EXPECT_THROW(eval_numeric(parse_expr("1/x"), 0.0, 1.0), lincheck::EvalDomainError);
  EXPECT_THROW(eval_numeric(parse_expr("log(x)"), -1.0, 1.0), lincheck::EvalDomainError);
  EXPECT_THROW(eval_numeric(parse_expr("sqrt(x)"), -1.0, 1.0), lincheck::EvalDomainError);
  EXPECT_DOUBLE_EQ(eval_numeric(parse_expr("c1*x", {"c1"}), 3.0, 0.0, {{"c1", BigRational(1, 2)}}), 1.5);
}
