#include <gtest/gtest.h>

#include <random>

#include "lincheck/errors.hpp"
#include "lincheck/symbolic/polynomial.hpp"

using namespace lincheck::sym;

namespace {

const Polynomial X = Polynomial::variable(Var::X);
const Polynomial Y = Polynomial::variable(Var::Y);

Polynomial random_poly(std::mt19937_64& rng, int degree, int terms) {
  std::uniform_int_distribution<int> coeff(-5, 5);
  std::uniform_int_distribution<int> exp(0, degree);
  std::vector<Polynomial::Term> t;
  for (int k = 0; k < terms; ++k) {
    const auto i = static_cast<std::uint32_t>(exp(rng));
    const auto j = static_cast<std::uint32_t>(exp(rng));
    t.push_back({{i, j}, BigRational(coeff(rng))});
  }
  return Polynomial::from_terms(std::move(t));
}

}  // namespace

TEST(Polynomial, TermOrderIsGradedLex) {
  Polynomial p = Y + X * Y + X * X + 1;
  ASSERT_EQ(p.size(), 4u);
  EXPECT_EQ(p.terms()[0].mono, (Monomial{2, 0}));
  EXPECT_EQ(p.terms()[1].mono, (Monomial{1, 1}));
  EXPECT_EQ(p.terms()[2].mono, (Monomial{0, 1}));
  EXPECT_EQ(p.terms()[3].mono, (Monomial{0, 0}));
}

TEST(Polynomial, CancellationLeavesNoZeroTerms) {
  Polynomial p = (X + Y) - (Y + X);
  EXPECT_TRUE(p.is_zero());
  EXPECT_EQ(p.size(), 0u);
}

TEST(Polynomial, Diff) {
  Polynomial p = X * X * Y;
  EXPECT_EQ(p.diff(Var::X), 2 * X * Y);
  EXPECT_EQ(p.diff(Var::Y), X * X);
  EXPECT_TRUE(Polynomial(7).diff(Var::Y).is_zero());
}

TEST(Polynomial, GcdOfProducts) {
  Polynomial a = (X + Y) * (X - 2 * Y + 1);
  Polynomial b = (X + Y) * (X * Y + 3);
  EXPECT_EQ(Polynomial::gcd(a, b), X + Y);
  EXPECT_EQ(Polynomial::gcd(a, Polynomial()), Polynomial::gcd(a, a));
  EXPECT_TRUE(Polynomial::gcd(X + 1, Y + 1).is_constant());
}

TEST(Polynomial, GcdMonomialContent) {
  Polynomial a = X * X * Y * (X + 1);
  Polynomial b = X * Y * Y * (X + 1);
  EXPECT_EQ(Polynomial::gcd(a, b), X * Y * (X + 1));
}

TEST(Polynomial, RandomGcdContainsCommonFactor) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    Polynomial g = random_poly(rng, 2, 3);
    Polynomial a = random_poly(rng, 2, 3);
    Polynomial b = random_poly(rng, 2, 3);
    if (g.is_zero() || a.is_zero() || b.is_zero()) continue;
    Polynomial h = Polynomial::gcd(g * a, g * b);
    EXPECT_TRUE(Polynomial::divide_exact(h, Polynomial::gcd(g, g)).has_value()) << g.to_string();
    EXPECT_TRUE(Polynomial::divide_exact(g * a, h).has_value());
    EXPECT_TRUE(Polynomial::divide_exact(g * b, h).has_value());
  }
}

TEST(Polynomial, ExactDivision) {
  Polynomial a = X * X - Y * Y;
  EXPECT_EQ(Polynomial::quotient(a, X - Y), X + Y);
  EXPECT_FALSE(Polynomial::divide_exact(a, X + 2 * Y).has_value());
}

TEST(Polynomial, EvalAndSubstitute) {
  Polynomial p = 3 * X * X * Y - Y + 7;
  EXPECT_EQ(p.eval(BigRational(2), BigRational(1, 3)), BigRational(32, 3));
  EXPECT_EQ(p.substitute(Var::X, BigRational(1)), 2 * Y + 7);
}

TEST(Polynomial, TermCap) {
  const std::size_t old = term_cap();
  set_term_cap(10);
  Polynomial p = 1 + X + Y;
  EXPECT_THROW(p.pow(6), lincheck::ExpressionTooLarge);
  set_term_cap(old);
  EXPECT_NO_THROW(p.pow(6));
}

TEST(Polynomial, ToStringLeadingNegativePower) {
  Polynomial p = -(X * X) + 1;
  EXPECT_EQ(p.to_string(), "-1*x^2 + 1");
}
