#include "lincheck/criteria/criteria3.hpp"

#include "closed_form.hpp"
#include "lincheck/errors.hpp"

namespace lincheck::criteria {

using sym::Var;

namespace {

RationalExpr dx(const RationalExpr& f) { return f.diff(Var::X); }
RationalExpr dy(const RationalExpr& f) { return f.diff(Var::Y); }

constexpr const char* kConstantInput =
    "constant coefficients: the derivative vector vanishes and the linear recovery does not apply";

GeodesicCoeffs2 from_array(const std::array<RationalExpr, 6>& u) { return {u[0], u[1], u[2], u[3], u[4], u[5]}; }

}  // namespace

bool CubicCoeffs::is_constant() const {
  for (const RationalExpr* e : fields())
    if (!e->is_constant()) return false;
  return true;
}

void CubicTensor::set(std::size_t a, std::size_t b, std::size_t c, std::size_t d, const RationalExpr& v) {
  ref({a, b, c, d}) = v;
  ref({a, b, d, c}) = v;
  ref({a, c, b, d}) = v;
  ref({a, c, d, b}) = v;
  ref({a, d, b, c}) = v;
  ref({a, d, c, b}) = v;
}

CubicCoeffs to_cubic_coeffs(const CubicTensor& a) {
  if (a.dim() != 2) throw DimensionMismatch("cubic coefficients need a 2D tensor");
  const RationalExpr three(3);
  return {a(0, 0, 0, 0), three * a(0, 0, 0, 1), three * a(0, 0, 1, 1), a(0, 1, 1, 1),
          a(1, 0, 0, 0), three * a(1, 0, 0, 1), three * a(1, 0, 1, 1), a(1, 1, 1, 1)};
}

CubicTensor to_cubic_tensor(const CubicCoeffs& c) {
  const RationalExpr third(BigRational(1, 3));
  CubicTensor t(2);
  t.set(0, 0, 0, 0, c.P);
  t.set(0, 0, 0, 1, third * c.Q);
  t.set(0, 0, 1, 1, third * c.R);
  t.set(0, 1, 1, 1, c.S);
  t.set(1, 0, 0, 0, c.T);
  t.set(1, 0, 0, 1, third * c.U);
  t.set(1, 0, 1, 1, third * c.V);
  t.set(1, 1, 1, 1, c.W);
  return t;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Linearizable:
      return "Linearizable";
    case Verdict::LinearizableNumeric:
      return "LinearizableNumeric";
    case Verdict::NotLinearizable:
      return "NotLinearizable";
    case Verdict::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

const char* to_string(CheckPath p) { return p == CheckPath::VariableCase ? "VariableCase" : "ConstantCase"; }

// ---- forward construction ----------------------------------------------------

CubicCoeffs build_cubic_2d(const GeodesicCoeffs2& g) {
  const auto& [a, b, c, d, e, f] = g;
  const RationalExpr two(2);
  CubicCoeffs A;
  A.P = -dx(a) - two * (a * a + b * d);
  A.Q = -dy(a) - two * dx(b) - two * (RationalExpr(3) * a * b + two * b * e + c * d);
  A.R = -(two * dy(b) + dx(c)) - two * (a * c + two * b * b + b * f + two * c * e);
  A.S = -dy(c) - two * (b * c + c * f);
  A.T = -dx(d) - two * (a * d + d * e);
  A.U = -(dy(d) + two * dx(e)) - two * (two * b * d + a * e + two * e * e + d * f);
  A.V = -(two * dy(e) + dx(f)) - two * (c * d + two * b * e + RationalExpr(3) * e * f);
  A.W = -dy(f) - two * (c * e + f * f);
  return A;
}

CubicTensor build_cubic_general(const tensor::Christoffel& G) {
  const std::size_t n = G.dim();
  // Unsymmetrized T^a_bcd = Γ^a_bc,d - 2 Γ^a_pb Γ^p_cd.
  auto raw = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    RationalExpr t = tensor::coord_diff(G(a, b, c), d);
    for (std::size_t p = 0; p < n; ++p) {
      if (G(a, p, b).is_zero() || G(p, c, d).is_zero()) continue;
      t -= RationalExpr(2) * G(a, p, b) * G(p, c, d);
    }
    return t;
  };
  const RationalExpr sixth(BigRational(1, 6));
  CubicTensor A(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = b; c < n; ++c)
        for (std::size_t d = c; d < n; ++d) {
          const RationalExpr s = raw(a, b, c, d) + raw(a, b, d, c) + raw(a, c, b, d) + raw(a, c, d, b) +
                                 raw(a, d, b, c) + raw(a, d, c, b);
          A.set(a, b, c, d, sixth * s);
        }
  return A;
}

// ---- recovery -----------------------------------------------------------------

sym::Matrix<RationalExpr> compatibility_matrix(const CubicCoeffs& A) {
  const auto& [P, Q, R, S, T, U, V, W] = A;
  auto k = [](long c, const RationalExpr& e) { return RationalExpr(c) * e; };
  const RationalExpr z;
  return {
      {k(-2, Q), k(6, P), z, k(-2, R), k(2, Q), z},
      {-R, z, k(3, P), k(-3, S), z, Q},
      {z, k(-2, R), k(2, Q), z, k(-6, S), k(2, R)},
      {k(-2, U), k(6, T), z, k(-2, V), k(2, U), z},
      {-V, z, k(3, T), k(-3, W), z, U},
      {z, k(-2, V), k(2, U), z, k(-6, W), k(2, V)},
  };
}

std::vector<RationalExpr> derivative_vector(const CubicCoeffs& A) {
  const RationalExpr three(3);
  return {three * dy(A.P) - dx(A.Q), dy(A.Q) - dx(A.R), dy(A.R) - three * dx(A.S),
          three * dy(A.T) - dx(A.U), dy(A.U) - dx(A.V), dy(A.V) - three * dx(A.W)};
}

RationalExpr delta(const CubicCoeffs& A) { return detail::closed_form_delta(A); }

GeodesicCoeffs2 recover_coeffs(const CubicCoeffs& A) {
  if (A.is_constant()) throw DeltaIdenticallyZero(kConstantInput);
  std::vector<RationalExpr> rhs = derivative_vector(A);
  for (auto& v : rhs) v = -v;
  auto sol = sym::solve_linear(compatibility_matrix(A), rhs);
  if (!sol) throw DeltaIdenticallyZero("compatibility matrix is singular (delta is identically zero)");
  const auto& u = *sol;
  return {u[0], u[1], u[2], u[3], u[4], u[5]};
}

GeodesicCoeffs2 recover_coeffs_closed_form(const CubicCoeffs& A) {
  if (A.is_constant()) throw DeltaIdenticallyZero(kConstantInput);
  auto u = detail::closed_form_unknowns(A, derivative_vector(A));
  if (!u) throw DeltaIdenticallyZero("delta is identically zero");
  return from_array(*u);
}

const std::array<const char*, 12> kSplitNames = {"a_x", "a_y", "b_x", "b_y", "c_x", "c_y",
                                                 "d_x", "d_y", "e_x", "e_y", "f_x", "f_y"};

CompatibilityResiduals compatibility_residuals(const CubicCoeffs& A, const GeodesicCoeffs2& g) {
  const auto& [a, b, c, d, e, f] = g;
  const RationalExpr two(2);
  const RationalExpr third(BigRational(1, 3));
  CompatibilityResiduals out;
  auto& s = out.splits;
  s[0] = dx(a) + (A.P + two * a * a + two * b * d);
  s[1] = dy(a) + (third * A.Q + two * a * b + two * b * e);
  s[2] = dx(b) + (third * A.Q + c * d + two * a * b + b * e);
  s[3] = dy(b) + (third * A.R + b * b + a * c + c * e + b * f);
  s[4] = dx(c) + (third * A.R + two * b * b + two * c * e);
  s[5] = dy(c) + (A.S + two * b * c + two * c * f);
  s[6] = dx(d) + (A.T + two * a * d + two * d * e);
  s[7] = dy(d) + (third * A.U + two * b * d + two * e * e);
  s[8] = dx(e) + (third * A.U + d * f + b * d + a * e + e * e);
  s[9] = dy(e) + (third * A.V + c * d + b * e + two * e * f);
  s[10] = dx(f) + (third * A.V + two * b * e + two * e * f);
  s[11] = dy(f) + (A.W + two * c * e + two * f * f);
  const auto M = compatibility_matrix(A);
  const auto D = derivative_vector(A);
  const std::array<const RationalExpr*, 6> u = {&a, &b, &c, &d, &e, &f};
  for (std::size_t i = 0; i < 6; ++i) {
    RationalExpr r = D[i];
    for (std::size_t j = 0; j < 6; ++j)
      if (!M[i][j].is_zero() && !u[j]->is_zero()) r += M[i][j] * *u[j];
    out.system[i] = r;
  }
  return out;
}

// ---- decisions ----------------------------------------------------------------

LinearizabilityReport check_variable(const CubicCoeffs& A) {
  LinearizabilityReport rep;
  rep.path = CheckPath::VariableCase;
  const GeodesicCoeffs2 g = recover_coeffs(A);
  if (!(recover_coeffs_closed_form(A) == g))
    rep.notes.push_back("closed-form recovery disagrees with the linear solve; the linear solve is used");

  const CompatibilityResiduals res = compatibility_residuals(A, g);
  for (std::size_t i = 0; i < 12; ++i)
    if (!res.splits[i].is_zero()) rep.failed_conditions.push_back({kSplitNames[i], res.splits[i].to_string()});
  const auto flat = flatness_residuals(g);
  for (std::size_t i = 0; i < 4; ++i)
    if (!flat[i].is_zero())
      rep.failed_conditions.push_back({"flatness " + std::to_string(i + 1), flat[i].to_string()});
  const CubicCoeffs built = build_cubic_2d(g);
  static constexpr const char* kNames[] = {"P", "Q", "R", "S", "T", "U", "V", "W"};
  const auto bf = built.fields();
  const auto af = A.fields();
  for (std::size_t i = 0; i < 8; ++i)
    if (!(*bf[i] == *af[i]))
      rep.failed_conditions.push_back({std::string("forward build ") + kNames[i], (*bf[i] - *af[i]).to_string()});

  if (rep.failed_conditions.empty()) {
    rep.verdict = Verdict::Linearizable;
    rep.branches.push_back(g);
  } else {
    rep.verdict = Verdict::NotLinearizable;
    static constexpr const char* kUnknowns[] = {"a", "b", "c", "d", "e", "f"};
    const std::array<const RationalExpr*, 6> u = {&g.a, &g.b, &g.c, &g.d, &g.e, &g.f};
    for (std::size_t i = 0; i < 6; ++i) rep.notes.push_back(std::string("recovered ") + kUnknowns[i] + " = " + u[i]->to_string());
  }
  return rep;
}

LinearizabilityReport check(const CubicCoeffs& A) {
  if (A.is_constant()) return classify_constant(A);
  if (!delta(A).is_zero()) return check_variable(A);
  LinearizabilityReport rep;
  rep.verdict = Verdict::Inconclusive;
  rep.path = CheckPath::VariableCase;
  rep.notes.push_back("variable coefficients with delta identically zero: outside the recovery procedure");
  return rep;
}

}  // namespace lincheck::criteria
