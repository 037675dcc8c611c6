#include <gtest/gtest.h>

#include "lincheck/errors.hpp"
#include "lincheck/symbolic/linalg.hpp"

using namespace lincheck::sym;

namespace {
const RationalExpr X = RationalExpr::variable(Var::X);
const RationalExpr Y = RationalExpr::variable(Var::Y);
}  // namespace

TEST(Linalg, RationalDeterminant) {
  EXPECT_EQ(determinant(Matrix<BigRational>{{1, 2}, {3, 4}}), BigRational(-2));
  EXPECT_EQ(determinant(Matrix<BigRational>{{0, 1, 0}, {1, 0, 0}, {0, 0, 5}}), BigRational(-5));
  EXPECT_EQ(determinant(Matrix<BigRational>{{1, 2}, {2, 4}}), BigRational(0));
  EXPECT_THROW(determinant(Matrix<BigRational>{{1, 2}}), lincheck::DimensionMismatch);
}

TEST(Linalg, PolynomialDeterminantMatchesExpansion) {
  const Polynomial x = Polynomial::variable(Var::X);
  const Polynomial y = Polynomial::variable(Var::Y);
  Matrix<Polynomial> m{{x, y, 1}, {0, x * y, y}, {x + 1, 0, x}};
  Polynomial expect = x * (x * y * x - y * 0) - y * (0 * x - y * (x + 1)) + 1 * (0 - x * y * (x + 1));
  EXPECT_EQ(determinant(m), expect);
  Matrix<Polynomial> z{{0, x}, {y, 0}};
  EXPECT_EQ(determinant(z), -(x * y));
}

TEST(Linalg, RationalFunctionDeterminant) {
  Matrix<RationalExpr> m{{1 / X, Y}, {X, 1 / Y}};
  EXPECT_EQ(determinant(m), 1 / (X * Y) - X * Y);
}

TEST(Linalg, SolveLinear) {
  Matrix<RationalExpr> m{{X, 1}, {1, Y}};
  auto z = solve_linear(m, {1, 0});
  ASSERT_TRUE(z.has_value());
  EXPECT_EQ((*z)[0], Y / (X * Y - 1));
  EXPECT_EQ((*z)[1], RationalExpr(-1) / (X * Y - 1));
  EXPECT_FALSE(solve_linear({{X, Y}, {2 * X, 2 * Y}}, {1, 1}).has_value());
  auto w = solve_linear({{1 / X, 0}, {0, X / (1 + Y)}}, {1, 1});
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ((*w)[0], X);
  EXPECT_EQ((*w)[1], (1 + Y) / X);
}

TEST(Linalg, Nullspace) {
  auto basis = nullspace({{1, 2, 3}, {2, 4, 6}});
  ASSERT_EQ(basis.size(), 2u);
  for (const auto& v : basis) EXPECT_EQ(v[0] + 2 * v[1] + 3 * v[2], 0);
  EXPECT_TRUE(nullspace({{1, 0}, {0, 1}}).empty());
  auto one = nullspace({{0, 1, 0}, {0, 0, 1}});
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0], (std::vector<BigRational>{1, 0, 0}));
}
