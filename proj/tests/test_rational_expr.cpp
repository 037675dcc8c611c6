#include <gtest/gtest.h>

#include <random>

#include "lincheck/errors.hpp"
#include "lincheck/symbolic/expr_tree.hpp"

using namespace lincheck::sym;

namespace {

const RationalExpr X = RationalExpr::variable(Var::X);
const RationalExpr Y = RationalExpr::variable(Var::Y);

RationalExpr parse_r(const std::string& s) { return to_rational(parse_expr(s)); }

// Random rational function: ratio of small polynomials plus a polynomial term.
RationalExpr random_expr(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-3, 3);
  auto poly = [&]() {
    RationalExpr p = c(rng);
    p += c(rng) * X + c(rng) * Y + c(rng) * X * Y + c(rng) * X * X;
    return p;
  };
  RationalExpr den = poly();
  if (den.is_zero()) den = 1;
  return poly() / den + poly();
}

}  // namespace

TEST(RationalExpr, FactorCancellation) {
  RationalExpr r = parse_r("(x^2-y^2)/(x-y)");
  EXPECT_EQ(r, X + Y);
  EXPECT_TRUE(r.den().is_constant());
}

TEST(RationalExpr, CanonicalFormOfExampleCoefficient) {
  RationalExpr r = parse_r("-6/x^2");
  EXPECT_EQ(r.num(), Polynomial(-6));
  EXPECT_EQ(r.den(), Polynomial::variable(Var::X).pow(2));
}

TEST(RationalExpr, DenominatorLeadingCoefficientPositive) {
  RationalExpr r = RationalExpr(1) / (1 - X);
  EXPECT_GT(sgn(r.den().leading().coeff), 0);
  EXPECT_EQ(r, RationalExpr(-1) / (X - 1));
}

TEST(RationalExpr, IntegerCoefficients) {
  RationalExpr r = (X / 2 + BigRational(1, 3)) / (Y / 4);
  for (const auto& t : r.num().terms()) EXPECT_EQ(t.coeff.get_den(), 1);
  for (const auto& t : r.den().terms()) EXPECT_EQ(t.coeff.get_den(), 1);
  EXPECT_EQ(r.eval(BigRational(1), BigRational(1)), BigRational(10, 3));
}

TEST(RationalExpr, Diff) {
  EXPECT_EQ(diff(X * X * Y, Var::X), 2 * X * Y);
  EXPECT_EQ(diff(parse_r("-6/x^2"), Var::X), parse_r("12/x^3"));
  EXPECT_TRUE(diff(RationalExpr(BigRational(5, 7)), Var::Y).is_zero());
}

TEST(RationalExpr, IsZero) {
  EXPECT_TRUE(is_zero((X + Y) - (Y + X)));
  EXPECT_FALSE(is_zero(RationalExpr(1) / (1 + X * X)));
}

TEST(RationalExpr, SumOfFractionsReduces) {
  RationalExpr r = RationalExpr(1) / (X - 1) - RationalExpr(1) / (X + 1);
  EXPECT_EQ(r, RationalExpr(2) / (X * X - 1));
  RationalExpr s = RationalExpr(1) / (X * (X + 1)) + RationalExpr(1) / ((X + 1) * Y);
  EXPECT_EQ(s, (X + Y) / (X * Y * (X + 1)));
}

TEST(RationalExpr, Errors) {
  EXPECT_THROW(X / RationalExpr(), lincheck::DivisionByZero);
  EXPECT_THROW((1 / X).eval(BigRational(0), BigRational(1)), lincheck::DivisionByZero);
  EXPECT_THROW((1 / X).eval(0.0, 1.0), lincheck::EvalDomainError);
}

TEST(RationalExprProperty, CanonicalFormSoundness) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> pt(-20, 20);
  for (int trial = 0; trial < 60; ++trial) {
    RationalExpr f = random_expr(rng);
    // g is f rewritten through a different sequence of operations, or perturbed.
    RationalExpr g = (f * (X + 2) - f * X) / 2;
    const bool perturb = trial % 3 == 0;
    if (perturb) g += RationalExpr(1) / (X * X + Y * Y + 1);
    bool agree = true;
    int tested = 0;
    while (tested < 20) {
      BigRational x(pt(rng), 7);
      BigRational y(pt(rng), 5);
      try {
        if (f.eval(x, y) != g.eval(x, y)) agree = false;
        ++tested;
      } catch (const lincheck::DivisionByZero&) {
      }
    }
    EXPECT_EQ(is_zero(f - g), agree);
    EXPECT_EQ(is_zero(f - g), !perturb);
  }
}

TEST(RationalExprProperty, ProductRule) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    RationalExpr f = random_expr(rng);
    RationalExpr g = random_expr(rng);
    for (Var v : {Var::X, Var::Y}) {
      EXPECT_EQ(diff(f * g, v), diff(f, v) * g + f * diff(g, v));
      EXPECT_EQ(diff(f + g, v), diff(f, v) + diff(g, v));
    }
  }
}

TEST(RationalExprProperty, MixedPartialsCommute) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    RationalExpr f = random_expr(rng);
    EXPECT_EQ(diff(diff(f, Var::X), Var::Y), diff(diff(f, Var::Y), Var::X));
  }
}

TEST(RationalExprProperty, SerializationRoundTrip) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 60; ++trial) {
    RationalExpr f = random_expr(rng);
    EXPECT_EQ(parse_r(f.to_string()), f) << f.to_string();
    EXPECT_EQ(to_rational(from_rational(f)), f);
  }
}
