#include <gtest/gtest.h>

#include <random>

#include "lincheck/criteria/criteria2.hpp"
#include "lincheck/errors.hpp"
#include "lincheck/symbolic/expr_tree.hpp"
#include "support/generators.hpp"

using namespace lincheck;
using namespace lincheck::criteria;
using sym::RationalExpr;

namespace {

RationalExpr R(const std::string& s) { return sym::to_rational(sym::parse_expr(s), sym::Bindings{}); }

GeodesicCoeffs2 polar() { return {0, 0, R("x"), 0, R("-1/x"), 0}; }

GeodesicCoeffs2 curved() { return {0, 0, R("x"), 0, R("-x/(1+x^2)"), 0}; }

}  // namespace

TEST(ToChristoffel, PolarSignMap) {
  const tensor::Christoffel g = to_christoffel(polar());
  EXPECT_EQ(g(0, 1, 1), R("-x"));
  EXPECT_EQ(g(1, 0, 1), R("1/x"));
  EXPECT_EQ(g(1, 1, 0), R("1/x"));
  EXPECT_TRUE(g(0, 0, 0).is_zero());
  EXPECT_TRUE(g(0, 0, 1).is_zero());
  EXPECT_TRUE(g(1, 0, 0).is_zero());
  EXPECT_TRUE(g(1, 1, 1).is_zero());
}

TEST(ToChristoffel, TrivialCases) {
  EXPECT_TRUE(to_christoffel(GeodesicCoeffs2{}).is_zero());
  const tensor::Christoffel g = to_christoffel({1, 0, 0, 0, 0, 0});
  EXPECT_EQ(g(0, 0, 0), RationalExpr(-1));
  int nonzero = 0;
  for (const auto& v : g.data()) nonzero += v.is_zero() ? 0 : 1;
  EXPECT_EQ(nonzero, 1);
  EXPECT_EQ(from_christoffel(to_christoffel(polar())), polar());
}

TEST(FromQuadraticSystem, GeodesicTypePassesThrough) {
  QuadraticSystem2 sys;
  sys.gamma = polar();
  EXPECT_EQ(from_quadratic_system(sys), polar());
}

TEST(FromQuadraticSystem, RejectsLinearAndConstantParts) {
  QuadraticSystem2 sys;
  sys.beta[0][0] = 1;
  try {
    from_quadratic_system(sys);
    FAIL();
  } catch (const NonGeodesicType& e) {
    EXPECT_EQ(e.components(), std::vector<std::string>{"beta^1_1"});
  }
  QuadraticSystem2 sys2;
  sys2.alpha[0] = R("x");
  try {
    from_quadratic_system(sys2);
    FAIL();
  } catch (const NonGeodesicType& e) {
    EXPECT_EQ(e.components(), std::vector<std::string>{"alpha^1"});
  }
}

TEST(FlatnessResiduals, Examples) {
  for (const auto& r : flatness_residuals(polar())) EXPECT_TRUE(r.is_zero()) << r;
  for (const auto& r : flatness_residuals(GeodesicCoeffs2{})) EXPECT_TRUE(r.is_zero());
  const auto c = flatness_residuals(curved());
  EXPECT_TRUE(c[0].is_zero());
  EXPECT_EQ(c[1], R("-1/(1+x^2)"));
  // -e_x + e^2 with e = -x/(1+x^2); equals R^2_112 of the same connection.
  EXPECT_EQ(c[2], R("1/(1+x^2)^2"));
  EXPECT_TRUE(c[3].is_zero());
}

TEST(IsLinearizable2, Examples) {
  EXPECT_TRUE(is_linearizable2(polar()));
  EXPECT_FALSE(is_linearizable2(curved()));
  EXPECT_TRUE(is_linearizable2(GeodesicCoeffs2{}));
}

TEST(Criteria2Property, AgreesWithRiemannOnRandomCoefficients) {
  std::mt19937_64 rng(201);
  for (int t = 0; t < 100; ++t) {
    GeodesicCoeffs2 c;
    for (RationalExpr* f : {&c.a, &c.b, &c.c, &c.d, &c.e, &c.f}) *f = fixtures::random_poly(rng, 2);
    EXPECT_EQ(is_linearizable2(c), tensor::is_flat(to_christoffel(c))) << t;
  }
}

TEST(Criteria2Property, ResidualsMatchCurvatureComponents) {
  // Each residual is a fixed combination of R^i_j12, which checks both paths.
  std::mt19937_64 rng(202);
  for (int t = 0; t < 20; ++t) {
    GeodesicCoeffs2 c;
    for (RationalExpr* f : {&c.a, &c.b, &c.c, &c.d, &c.e, &c.f}) *f = fixtures::random_poly(rng, 2);
    const auto res = flatness_residuals(c);
    const tensor::RiemannUp r = tensor::riemann_up(to_christoffel(c));
    EXPECT_EQ(res[0], r(0, 0, 0, 1));
    EXPECT_EQ(res[1], r(0, 1, 0, 1));
    EXPECT_EQ(res[2], r(1, 0, 0, 1));
    EXPECT_EQ(res[3], -(r(0, 0, 0, 1) + r(1, 1, 0, 1)));
  }
}

TEST(Criteria2Property, FlatByConstructionIsLinearizable) {
  std::mt19937_64 rng(203);
  for (int t = 0; t < 100; ++t) {
    const fixtures::PolyMap m = fixtures::random_map(rng);
    const GeodesicCoeffs2 c = from_christoffel(fixtures::flat_connection(m));
    EXPECT_TRUE(is_linearizable2(c)) << m.u.to_string() << " ; " << m.v.to_string();
  }
}
