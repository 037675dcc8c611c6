#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "lincheck/criteria/criteria3.hpp"
#include "lincheck/errors.hpp"
#include "lincheck/symbolic/expr_tree.hpp"
#include "support/generators.hpp"

using namespace lincheck;
using namespace lincheck::criteria;
using sym::BigRational;
using sym::RationalExpr;

namespace {

RationalExpr R(const std::string& s) { return sym::to_rational(sym::parse_expr(s), sym::Bindings{}); }

GeodesicCoeffs2 polar() { return {0, 0, R("x"), 0, R("-1/x"), 0}; }
GeodesicCoeffs2 curved() { return {0, 0, R("x"), 0, R("-x/(1+x^2)"), 0}; }

CubicCoeffs ex1() { return {0, 0, 3, 0, 0, R("-6/x^2"), 0, 2}; }
CubicCoeffs ex2() { return {0, -3, 0, 0, 0, R("9*y^2"), 18, R("-6/y^2")}; }
CubicCoeffs ex3() { return {-2, 0, -6, 0, 0, -6, 0, -2}; }

GeodesicCoeffs2 random_coeffs(std::mt19937_64& rng) {
  return {fixtures::random_poly(rng, 1), fixtures::random_poly(rng, 1), fixtures::random_poly(rng, 1),
          fixtures::random_poly(rng, 1), fixtures::random_poly(rng, 1), fixtures::random_poly(rng, 1)};
}

GeodesicCoeffs2 flat_sample(std::mt19937_64& rng) {
  return from_christoffel(fixtures::flat_connection(fixtures::random_map(rng)));
}

bool has_branch(const LinearizabilityReport& r, const GeodesicCoeffs2& g) {
  return std::find(r.branches.begin(), r.branches.end(), g) != r.branches.end();
}

void expect_sound(const CubicCoeffs& A, const LinearizabilityReport& r) {
  if (r.verdict == Verdict::Linearizable) {
    ASSERT_FALSE(r.branches.empty());
    for (const auto& g : r.branches) {
      EXPECT_EQ(build_cubic_2d(g), A);
      EXPECT_TRUE(is_linearizable2(g));
    }
  }
  if (r.verdict == Verdict::NotLinearizable) EXPECT_FALSE(r.failed_conditions.empty());
}

}  // namespace

TEST(BuildCubic2d, PolarGivesFirstExample) { EXPECT_EQ(build_cubic_2d(polar()), ex1()); }

TEST(BuildCubic2d, ZeroAndConstant) {
  EXPECT_EQ(build_cubic_2d(GeodesicCoeffs2{}), CubicCoeffs{});
  EXPECT_EQ(build_cubic_2d({1, 0, 1, 0, 1, 0}), ex3());
}

TEST(BuildCubicGeneral, ZeroAndPolar) {
  const CubicTensor z = build_cubic_general(to_christoffel(GeodesicCoeffs2{}));
  for (const auto& v : z.data()) EXPECT_TRUE(v.is_zero());
  EXPECT_EQ(to_cubic_coeffs(build_cubic_general(to_christoffel(polar()))), ex1());
}

TEST(BuildCubicGeneral, ThreeDimensionalEmbedding) {
  tensor::Christoffel g3(3);
  g3.set(0, 1, 1, R("-x"));
  const CubicTensor a3 = build_cubic_general(g3);
  tensor::Christoffel g2(2);
  g2.set(0, 1, 1, R("-x"));
  const CubicTensor a2 = build_cubic_general(g2);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b)
      for (std::size_t c = 0; c < 3; ++c)
        for (std::size_t d = 0; d < 3; ++d) {
          const bool inside = a < 2 && b < 2 && c < 2 && d < 2;
          if (inside)
            EXPECT_EQ(a3(a, b, c, d), a2(a, b, c, d));
          else
            EXPECT_TRUE(a3(a, b, c, d).is_zero());
        }
  // Only the derivative term survives: -d_x(x) averaged over 3 of 6 slots.
  EXPECT_EQ(a3(0, 1, 1, 0), RationalExpr(BigRational(-1, 3)));
  EXPECT_EQ(a3(0, 0, 1, 1), a3(0, 1, 0, 1));
}

TEST(BuildCubic, TensorRoundTrip) {
  EXPECT_EQ(to_cubic_coeffs(to_cubic_tensor(ex1())), ex1());
  EXPECT_THROW(to_cubic_coeffs(CubicTensor(3)), DimensionMismatch);
}

TEST(BuildCubic, ExplicitFormulasMatchSymmetrizedTensor) {
  std::mt19937_64 rng(3101);
  for (int t = 0; t < 20; ++t) {
    const GeodesicCoeffs2 g = random_coeffs(rng);
    EXPECT_EQ(build_cubic_2d(g), to_cubic_coeffs(build_cubic_general(to_christoffel(g)))) << "sample " << t;
  }
}

// x''' from differentiating x'' = a x'^2 + 2b x'y' + c y'^2 along the flow and
// substituting the system again, at fixed numeric (x', y') = (p, q).
TEST(BuildCubic, DerivationIdentity) {
  std::mt19937_64 rng(3102);
  const std::pair<long, long> dirs[] = {{1, 0}, {0, 1}, {1, 1}, {1, -2}, {3, 1}};
  for (int t = 0; t < 5; ++t) {
    const GeodesicCoeffs2 g = flat_sample(rng);
    const CubicCoeffs A = build_cubic_2d(g);
    for (auto [pi, qi] : dirs) {
      const RationalExpr p(pi), q(qi), two(2);
      auto quad = [&](const RationalExpr& u, const RationalExpr& v, const RationalExpr& w) {
        return u * p * p + two * v * p * q + w * q * q;
      };
      auto flow = [&](const RationalExpr& f) { return f.diff(sym::Var::X) * p + f.diff(sym::Var::Y) * q; };
      const RationalExpr xpp = quad(g.a, g.b, g.c);
      const RationalExpr ypp = quad(g.d, g.e, g.f);
      // d/ds of the quadratic form: coefficient derivatives plus chain rule on x', y'.
      const RationalExpr x3 = quad(flow(g.a), flow(g.b), flow(g.c)) + two * (g.a * p + g.b * q) * xpp +
                              two * (g.b * p + g.c * q) * ypp;
      const RationalExpr y3 = quad(flow(g.d), flow(g.e), flow(g.f)) + two * (g.d * p + g.e * q) * xpp +
                              two * (g.e * p + g.f * q) * ypp;
      const RationalExpr cx = A.P * p * p * p + A.Q * p * p * q + A.R * p * q * q + A.S * q * q * q;
      const RationalExpr cy = A.T * p * p * p + A.U * p * p * q + A.V * p * q * q + A.W * q * q * q;
      EXPECT_TRUE((x3 + cx).is_zero()) << x3 + cx;
      EXPECT_TRUE((y3 + cy).is_zero()) << y3 + cy;
    }
  }
}

TEST(Delta, Examples) {
  EXPECT_TRUE(delta(CubicCoeffs{}).is_zero());
  const RationalExpr d1 = delta(ex1());
  EXPECT_FALSE(d1.is_zero());
  EXPECT_EQ(d1, R("11664/x^6"));
  EXPECT_EQ(d1.eval(BigRational(2), BigRational(1)), BigRational(729, 4));
  EXPECT_EQ(delta(ex2()), RationalExpr(-314928));
  // Ex.3 is routed to the constant path regardless of this value.
  EXPECT_EQ(delta(ex3()), RationalExpr(constant_determinant(ex3()) / -8));
  EXPECT_TRUE(delta({R("x"), 0, 0, 0, 0, 0, 0, 0}).is_zero());
}

TEST(Delta, EqualsMinusDeterminantOverEight) {
  std::mt19937_64 rng(3103);
  for (const CubicCoeffs& A : {ex1(), ex2(), ex3()})
    EXPECT_EQ(delta(A), sym::determinant(compatibility_matrix(A)) / RationalExpr(-8));
  for (int t = 0; t < 10; ++t) {
    CubicCoeffs A;
    for (auto* f : {&A.P, &A.Q, &A.R, &A.S, &A.T, &A.U, &A.V, &A.W}) *f = fixtures::random_poly(rng, 1);
    EXPECT_EQ(delta(A), sym::determinant(compatibility_matrix(A)) / RationalExpr(-8)) << "sample " << t;
  }
}

TEST(Recover, FirstExample) {
  EXPECT_EQ(recover_coeffs(ex1()), polar());
  EXPECT_EQ(recover_coeffs_closed_form(ex1()), polar());
}

// The second example's recovery is unique (delta is a nonzero constant), and
// the unique solution does not reproduce the input.
TEST(Recover, SecondExampleHasNoConsistentSolution) {
  const GeodesicCoeffs2 g = recover_coeffs(ex2());
  EXPECT_EQ(g, (GeodesicCoeffs2{R("y"), R("1/y"), 0, 0, R("y"), 0}));
  EXPECT_EQ(recover_coeffs_closed_form(ex2()), g);
  EXPECT_NE(build_cubic_2d(g), ex2());
}

TEST(Recover, ConstantInputThrows) {
  EXPECT_THROW(recover_coeffs(ex3()), DeltaIdenticallyZero);
  EXPECT_THROW(recover_coeffs_closed_form(ex3()), DeltaIdenticallyZero);
  EXPECT_THROW(recover_coeffs(CubicCoeffs{}), DeltaIdenticallyZero);
  // Closed-form numerators vanish for constants: D = 0.
  for (const auto& d : derivative_vector(ex3())) EXPECT_TRUE(d.is_zero());
}

TEST(Recover, SingularVariableInputThrows) {
  EXPECT_THROW(recover_coeffs({R("x"), 0, 0, 0, 0, 0, 0, 0}), DeltaIdenticallyZero);
  EXPECT_THROW(recover_coeffs_closed_form({R("x"), 0, 0, 0, 0, 0, 0, 0}), DeltaIdenticallyZero);
}

TEST(CompatibilityResiduals, Examples) {
  const auto ok = compatibility_residuals(ex1(), polar());
  for (const auto& r : ok.splits) EXPECT_TRUE(r.is_zero()) << r;
  for (const auto& r : ok.system) EXPECT_TRUE(r.is_zero()) << r;
  const auto z = compatibility_residuals(CubicCoeffs{}, GeodesicCoeffs2{});
  for (const auto& r : z.splits) EXPECT_TRUE(r.is_zero());
  const auto bad = compatibility_residuals(ex1(), curved());
  EXPECT_TRUE(std::any_of(bad.splits.begin(), bad.splits.end(), [](const auto& r) { return !r.is_zero(); }));
}

TEST(CompatibilityResiduals, VanishOnFlatSamples) {
  std::mt19937_64 rng(3104);
  for (int t = 0; t < 10; ++t) {
    const GeodesicCoeffs2 g = flat_sample(rng);
    const auto res = compatibility_residuals(build_cubic_2d(g), g);
    for (std::size_t i = 0; i < 12; ++i) EXPECT_TRUE(res.splits[i].is_zero()) << kSplitNames[i] << ": " << res.splits[i];
    for (const auto& r : res.system) EXPECT_TRUE(r.is_zero()) << r;
  }
}

TEST(CheckVariable, FirstExampleLinearizable) {
  const auto r = check_variable(ex1());
  EXPECT_EQ(r.verdict, Verdict::Linearizable);
  EXPECT_EQ(r.path, CheckPath::VariableCase);
  ASSERT_EQ(r.branches.size(), 1u);
  EXPECT_EQ(r.branches[0], polar());
  EXPECT_TRUE(r.notes.empty());
}

TEST(CheckVariable, SecondExampleFails) {
  const auto r = check_variable(ex2());
  EXPECT_EQ(r.verdict, Verdict::NotLinearizable);
  EXPECT_FALSE(r.failed_conditions.empty());
  expect_sound(ex2(), r);
}

TEST(CheckVariable, NonFlatInputRejected) {
  const CubicCoeffs A = build_cubic_2d(curved());
  ASSERT_FALSE(delta(A).is_zero());
  const auto r = check_variable(A);
  EXPECT_EQ(r.verdict, Verdict::NotLinearizable);
  ASSERT_FALSE(r.failed_conditions.empty());
  for (const auto& f : r.failed_conditions) EXPECT_NE(f.residual, "0") << f.name;
}

TEST(ConstantMatrix, Examples) {
  for (const auto& row : constant_matrix(CubicCoeffs{}))
    for (const auto& v : row) EXPECT_EQ(v, 0);
  const ConstantMatrix6 m = constant_matrix(ex3());
  const long expected[6][6] = {{0, -12, 0, 12, 0, 0}, {6, 0, -6, 0, 0, 0},  {0, 12, 0, 0, 0, -12},
                               {12, 0, 0, 0, -12, 0}, {0, 0, 0, 6, 0, -6}, {0, 0, -12, 0, 12, 0}};
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) EXPECT_EQ(m[i][j], expected[i][j]) << i << "," << j;
  CubicCoeffs v = ex3();
  v.U = R("x");
  EXPECT_THROW(constant_matrix(v), NotConstant);
  EXPECT_THROW(constant_determinant(v), NotConstant);
  EXPECT_THROW(classify_constant(v), NotConstant);
}

TEST(ConstantDeterminant, Examples) {
  EXPECT_EQ(constant_determinant(ex3()), 0);
  EXPECT_EQ(constant_determinant(CubicCoeffs{}), 0);
  std::mt19937_64 rng(3105);
  CubicCoeffs A;
  for (auto* f : {&A.P, &A.Q, &A.R, &A.S, &A.T, &A.U, &A.V, &A.W}) *f = fixtures::draw(rng, -5, 5);
  EXPECT_NE(constant_determinant(A), 0);
  EXPECT_EQ(classify_constant(A).verdict, Verdict::NotLinearizable);
}

TEST(ClassifyConstant, ThirdExample) {
  const auto r = classify_constant(ex3());
  EXPECT_EQ(r.verdict, Verdict::Linearizable);
  EXPECT_EQ(r.path, CheckPath::ConstantCase);
  EXPECT_EQ(r.case_label, "1.3");
  EXPECT_TRUE(has_branch(r, {1, 0, 1, 0, 1, 0}));
  EXPECT_TRUE(has_branch(r, {-1, 0, -1, 0, -1, 0}));
  expect_sound(ex3(), r);
}

TEST(ClassifyConstant, DiagonalCase) {
  const CubicCoeffs A{-2, 0, 0, 0, 0, 0, 0, -2};
  const auto r = classify_constant(A);
  EXPECT_EQ(r.verdict, Verdict::Linearizable);
  EXPECT_EQ(r.case_label, "1.1.1");
  EXPECT_TRUE(has_branch(r, {1, 0, 0, 0, 0, 1}));
  EXPECT_TRUE(has_branch(r, {-1, 0, 0, 0, 0, -1}));
  expect_sound(A, r);
}

TEST(ClassifyConstant, SignConstraintRejects) {
  const CubicCoeffs A{2, 0, 0, 0, 0, 0, 0, 0};
  const auto r = classify_constant(A);
  EXPECT_EQ(r.verdict, Verdict::NotLinearizable);
  EXPECT_FALSE(r.failed_conditions.empty());
  EXPECT_TRUE(r.branches.empty());
}

TEST(ClassifyConstant, IrrationalBranchIsNumeric) {
  // a^2 = 2, f^2 = 1.
  const CubicCoeffs A{-4, 0, 0, 0, 0, 0, 0, -2};
  const auto r = classify_constant(A);
  EXPECT_EQ(r.verdict, Verdict::LinearizableNumeric);
  EXPECT_TRUE(r.branches.empty());
  EXPECT_FALSE(r.notes.empty());
  EXPECT_EQ(constant_determinant(A), 0);
}

TEST(ClassifyConstant, ZeroIsLinear) {
  const auto r = classify_constant(CubicCoeffs{});
  EXPECT_EQ(r.verdict, Verdict::Linearizable);
  EXPECT_TRUE(has_branch(r, GeodesicCoeffs2{}));
}

// Constant coefficient sets, flat or not: the report must be sound, a
// Linearizable verdict needs a vanishing determinant, and flat inputs must be
// recognized (their own coefficients are a valid branch).
TEST(ClassifyConstant, RandomSoundnessAndNecessity) {
  std::mt19937_64 rng(3106);
  int flat = 0;
  for (int t = 0; t < 60; ++t) {
    GeodesicCoeffs2 g;
    for (auto* v : {&g.a, &g.b, &g.c, &g.d, &g.e, &g.f}) *v = fixtures::draw(rng, 0, 3) == 0 ? 0 : fixtures::draw(rng, -2, 2);
    if (t % 2 == 0) {
      // Force flatness on half the samples: with b != 0, e = cd/b and
      // f = (b^2 + ce - ac)/b solve the first two conditions.
      if (g.b.is_zero()) g.b = 1;
      g.e = g.c * g.d / g.b;
      g.f = (g.b * g.b + g.c * g.e - g.a * g.c) / g.b;
    }
    const CubicCoeffs A = build_cubic_2d(g);
    const auto r = classify_constant(A);
    expect_sound(A, r);
    if (r.verdict == Verdict::Linearizable || r.verdict == Verdict::LinearizableNumeric) {
      EXPECT_EQ(constant_determinant(A), 0) << "sample " << t;
    }
    if (is_linearizable2(g)) {
      ++flat;
      EXPECT_NE(r.verdict, Verdict::NotLinearizable) << "sample " << t;
      if (r.verdict == Verdict::Linearizable) EXPECT_TRUE(has_branch(r, g)) << "sample " << t;
    }
  }
  EXPECT_GT(flat, 10);
}

TEST(Check, Dispatch) {
  const auto r1 = check(ex1());
  EXPECT_EQ(r1.path, CheckPath::VariableCase);
  EXPECT_EQ(r1.verdict, Verdict::Linearizable);
  const auto r3 = check(ex3());
  EXPECT_EQ(r3.path, CheckPath::ConstantCase);
  EXPECT_EQ(r3.verdict, Verdict::Linearizable);
  const CubicCoeffs px{R("x"), 0, 0, 0, 0, 0, 0, 0};
  ASSERT_TRUE(delta(px).is_zero());
  const auto rx = check(px);
  EXPECT_EQ(rx.verdict, Verdict::Inconclusive);
  EXPECT_EQ(rx.path, CheckPath::VariableCase);
  ASSERT_EQ(rx.notes.size(), 1u);
  EXPECT_NE(rx.notes[0].find("delta identically zero"), std::string::npos);
}

TEST(Check, NonFlatControl) {
  const auto r = check(build_cubic_2d(curved()));
  EXPECT_EQ(r.verdict, Verdict::NotLinearizable);
  EXPECT_FALSE(r.failed_conditions.empty());
}

TEST(Check, FlatRoundTrip) {
  std::mt19937_64 rng(3107);
  int recovered = 0;
  for (int t = 0; t < 15; ++t) {
    const GeodesicCoeffs2 g = flat_sample(rng);
    const CubicCoeffs A = build_cubic_2d(g);
    if (delta(A).is_zero()) continue;
    ++recovered;
    EXPECT_EQ(recover_coeffs(A), g) << "sample " << t;
    EXPECT_EQ(recover_coeffs_closed_form(A), g) << "sample " << t;
    const auto r = check(A);
    EXPECT_EQ(r.verdict, Verdict::Linearizable) << "sample " << t;
    expect_sound(A, r);
  }
  EXPECT_GT(recovered, 10);
}

TEST(Verdict, Names) {
  EXPECT_STREQ(to_string(Verdict::Linearizable), "Linearizable");
  EXPECT_STREQ(to_string(Verdict::LinearizableNumeric), "LinearizableNumeric");
  EXPECT_STREQ(to_string(Verdict::NotLinearizable), "NotLinearizable");
  EXPECT_STREQ(to_string(Verdict::Inconclusive), "Inconclusive");
  EXPECT_STREQ(to_string(CheckPath::ConstantCase), "ConstantCase");
}
