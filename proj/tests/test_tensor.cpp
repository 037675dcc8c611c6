#include <gtest/gtest.h>

#include "lincheck/errors.hpp"
#include "lincheck/symbolic/expr_tree.hpp"
#include "lincheck/tensor/tensor.hpp"
#include "support/generators.hpp"

using namespace lincheck;
using namespace lincheck::tensor;
using sym::Var;

namespace {

RationalExpr R(const std::string& s) { return sym::to_rational(sym::parse_expr(s)); }

const RationalExpr X = RationalExpr::variable(Var::X);

Christoffel polar() {
  Christoffel g(2);
  g.set(0, 1, 1, -X);
  g.set(1, 0, 1, 1 / X);
  return g;
}

bool all_zero(const Components& c) { return c.is_zero(); }

void expect_identities(const Metric& g) {
  const std::size_t n = g.dim();
  const Christoffel G = christoffel_from_metric(g);
  const RiemannUp Ru = riemann_up(G);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        ASSERT_EQ(G(i, j, k), G(i, k, j));
        for (std::size_t l = 0; l < n; ++l) {
          ASSERT_EQ(Ru(i, j, k, l), -Ru(i, j, l, k));
          ASSERT_TRUE((Ru(i, j, k, l) + Ru(i, k, l, j) + Ru(i, l, j, k)).is_zero());
        }
      }
  for (LoweringOrder order : {LoweringOrder::Transposed, LoweringOrder::Standard}) {
    const RiemannDown Rd = lower_riemann(Ru, g, order);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t l = 0; l < n; ++l) ASSERT_EQ(Rd(i, j, k, l), -Rd(j, i, k, l));
    const RiemannUp back = raise_riemann(Rd, g, order);
    ASSERT_EQ(back.data(), Ru.data());
  }
  ASSERT_TRUE(all_zero(metric_compatibility_residual(g, G)));
  ASSERT_TRUE(all_zero(second_bianchi_residual(G)));
}

}  // namespace

TEST(Metric, Validation) {
  EXPECT_THROW(Metric({{1, X}, {0, 1}}), InvalidMetric);
  EXPECT_THROW(Metric({{1, 1}, {1, 1}}), SingularMetric);
  EXPECT_THROW(Metric({{1, 0}}), InvalidMetric);
}

TEST(InverseMetric, Examples) {
  Metric inv = inverse_metric(Metric::diagonal({1, X * X}));
  EXPECT_EQ(inv(0, 0), RationalExpr(1));
  EXPECT_EQ(inv(1, 1), R("1/x^2"));
  EXPECT_TRUE(inv(0, 1).is_zero());
  EXPECT_EQ(inverse_metric(Metric::identity(2)).data(), Metric::identity(2).data());
  Metric swap({{0, 1}, {1, 0}});
  EXPECT_EQ(inverse_metric(swap).data(), swap.data());
}

TEST(InverseMetric, ProductIsIdentity) {
  std::mt19937_64 rng(5);
  for (std::size_t n : {2u, 3u}) {
    Metric g = fixtures::random_metric(rng, n);
    Metric h = inverse_metric(g);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        RationalExpr s;
        for (std::size_t k = 0; k < n; ++k) s += g(i, k) * h(k, j);
        EXPECT_EQ(s, RationalExpr(i == j ? 1 : 0));
      }
  }
}

TEST(Christoffel, FromMetric) {
  Christoffel p = christoffel_from_metric(Metric::diagonal({1, X * X}));
  EXPECT_EQ(p.data(), polar().data());
  EXPECT_TRUE(christoffel_from_metric(Metric::identity(2)).is_zero());
  Christoffel q = christoffel_from_metric(Metric::diagonal({1, 1 + X * X}));
  EXPECT_EQ(q(0, 1, 1), -X);
  EXPECT_EQ(q(1, 0, 1), R("x/(1+x^2)"));
  EXPECT_EQ(q(1, 1, 0), R("x/(1+x^2)"));
  EXPECT_TRUE(q(0, 0, 0).is_zero() && q(0, 0, 1).is_zero() && q(1, 0, 0).is_zero() && q(1, 1, 1).is_zero());
}

TEST(Riemann, Examples) {
  EXPECT_TRUE(riemann_up(Christoffel(2)).is_zero());
  EXPECT_TRUE(riemann_up(polar()).is_zero());
  RiemannUp r = riemann_up(christoffel_from_metric(Metric::diagonal({1, 1 + X * X})));
  EXPECT_FALSE(r.is_zero());
  EXPECT_EQ(r(0, 1, 0, 1), R("-1/(1+x^2)"));
  EXPECT_TRUE(is_flat(polar()));
  EXPECT_TRUE(is_flat(Christoffel(3)));
  EXPECT_FALSE(is_flat(christoffel_from_metric(Metric::diagonal({1, 1 + X * X}))));
}

TEST(LowerRiemann, Examples) {
  Metric id = Metric::identity(2);
  EXPECT_TRUE(lower_riemann(RiemannUp(2), id).is_zero());
  Metric g = Metric::diagonal({1, 1 + X * X});
  RiemannUp up = riemann_up(christoffel_from_metric(g));
  RiemannDown down = lower_riemann(up, id);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) EXPECT_EQ(down(i, j, k, l), up(i, j, l, k));
  RiemannDown d = lower_riemann(up, g);
  EXPECT_EQ(d(0, 1, 0, 1), -d(1, 0, 0, 1));
  EXPECT_FALSE(d(0, 1, 0, 1).is_zero());
}

TEST(GeodesicRhs, Examples) {
  auto zero = geodesic_rhs(Christoffel(2), CurveState<double>{{0.3, 0.1}, {1.0, 2.0}});
  EXPECT_EQ(zero, (std::vector<double>{0.0, 0.0}));
  auto acc = geodesic_rhs(polar(), CurveState<sym::BigRational>{{1, 0}, {0, 1}});
  EXPECT_EQ(acc[0], 1);
  EXPECT_EQ(acc[1], 0);
  auto num = geodesic_rhs(polar(), CurveState<double>{{2.0, 0.0}, {0.5, 1.0}});
  EXPECT_DOUBLE_EQ(num[0], 2.0);
  EXPECT_DOUBLE_EQ(num[1], -0.5);
  EXPECT_THROW(geodesic_rhs(polar(), CurveState<double>{{0.0, 0.0}, {1.0, 1.0}}), EvalDomainError);
  EXPECT_THROW(geodesic_rhs(polar(), CurveState<double>{{1.0}, {1.0}}), DimensionMismatch);
}

TEST(MetricCompatibility, Examples) {
  EXPECT_TRUE(metric_compatibility_residual(Metric::diagonal({1, X * X}), polar()).is_zero());
  EXPECT_FALSE(metric_compatibility_residual(Metric::identity(2), polar()).is_zero());
  EXPECT_TRUE(metric_compatibility_residual(Metric::identity(2), Christoffel(2)).is_zero());
}

TEST(SecondBianchi, Examples) {
  EXPECT_TRUE(second_bianchi_residual(Christoffel(2)).is_zero());
  EXPECT_TRUE(second_bianchi_residual(polar()).is_zero());
  EXPECT_TRUE(second_bianchi_residual(christoffel_from_metric(Metric::diagonal({1, 1 + X * X}))).is_zero());
}

TEST(TensorProperty, RandomMetricIdentities) {
  std::mt19937_64 rng(100);
  for (int t = 0; t < 15; ++t) {
    SCOPED_TRACE(t);
    expect_identities(fixtures::random_metric(rng, 2));
  }
}

TEST(TensorProperty, RandomMetricIdentitiesDim3) {
  std::mt19937_64 rng(101);
  for (int t = 0; t < 3; ++t) {
    SCOPED_TRACE(t);
    expect_identities(fixtures::random_metric(rng, 3));
  }
}

TEST(TensorProperty, PullbackMetricsAreFlat) {
  std::mt19937_64 rng(102);
  for (int t = 0; t < 20; ++t) {
    fixtures::PolyMap m = fixtures::random_map(rng);
    EXPECT_TRUE(is_flat(christoffel_from_metric(fixtures::pullback_metric(m)))) << m.u.to_string();
  }
}
