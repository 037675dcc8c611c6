#include <algorithm>
#include <cmath>
#include <sstream>

#include "lincheck/criteria/criteria3.hpp"
#include "lincheck/errors.hpp"

namespace lincheck::criteria {

namespace {

// A constant that is exact when rational and approximate otherwise.
struct Num {
  std::optional<BigRational> exact;
  double approx = 0;

  Num() : exact(BigRational(0)) {}
  Num(long c) : Num(BigRational(c)) {}  // NOLINT
  Num(const BigRational& q) : exact(q), approx(q.get_d()) {}  // NOLINT
  static Num inexact(double v) {
    Num n;
    n.exact.reset();
    n.approx = v;
    return n;
  }
};

template <typename Op, typename DOp>
Num combine(const Num& a, const Num& b, Op op, DOp dop) {
  if (a.exact && b.exact) return Num(BigRational(op(*a.exact, *b.exact)));
  return Num::inexact(dop(a.approx, b.approx));
}

Num operator+(const Num& a, const Num& b) { return combine(a, b, std::plus<>(), std::plus<>()); }
Num operator-(const Num& a, const Num& b) { return combine(a, b, std::minus<>(), std::minus<>()); }
Num operator*(const Num& a, const Num& b) { return combine(a, b, std::multiplies<>(), std::multiplies<>()); }
Num operator/(const Num& a, const Num& b) { return combine(a, b, std::divides<>(), std::divides<>()); }
Num operator-(const Num& a) { return Num(0) - a; }

using Candidate = std::array<Num, 6>;

// Forward build and flatness for constant coefficients: entries 0..7 are
// P..W, entries 8..10 the three algebraic flatness conditions.
template <typename T>
std::array<T, 11> constant_system(const std::array<T, 6>& g) {
  const T& a = g[0];
  const T& b = g[1];
  const T& c = g[2];
  const T& d = g[3];
  const T& e = g[4];
  const T& f = g[5];
  const T two(2);
  const T three(3);
  return {
      -(two * (a * a + b * d)),
      -(two * (three * a * b + two * b * e + c * d)),
      -(two * (a * c + two * b * b + b * f + two * c * e)),
      -(two * (b * c + c * f)),
      -(two * (a * d + d * e)),
      -(two * (two * b * d + a * e + two * e * e + d * f)),
      -(two * (c * d + two * b * e + three * e * f)),
      -(two * (c * e + f * f)),
      b * e - c * d,
      (a * c - b * b) + (b * f - c * e),
      -(a * e - b * d) - (d * f - e * e),
  };
}

class Search {
 public:
  explicit Search(const CubicCoeffs& A) {
    const auto f = A.fields();
    double m = 0;
    for (std::size_t i = 0; i < 8; ++i) {
      a_[i] = f[i]->constant_value();
      m = std::max(m, std::fabs(a_[i].get_d()));
    }
    scale_ = 1 + m;
  }

  const BigRational& A(std::size_t i) const { return a_[i]; }

  bool near_zero(const Num& v, double magnitude = 1) const {
    if (v.exact) return sgn(*v.exact) == 0;
    return std::fabs(v.approx) <= 1e-12 * scale_ * magnitude;
  }

  std::vector<Num> roots(const Num& square) const {
    if (square.exact) {
      const BigRational& s = *square.exact;
      if (sgn(s) < 0) return {};
      if (sgn(s) == 0) return {Num(0)};
      if (auto r = sym::exact_sqrt(s)) return {Num(*r), Num(BigRational(-*r))};
      const double r = std::sqrt(s.get_d());
      return {Num::inexact(r), Num::inexact(-r)};
    }
    if (near_zero(square)) return {Num::inexact(0)};
    if (square.approx < 0) return {};
    const double r = std::sqrt(square.approx);
    return {Num::inexact(r), Num::inexact(-r)};
  }

  enum class Outcome { Rejected, Exact, Numeric };

  Outcome validate(const Candidate& g) const {
    bool exact = true;
    for (const Num& v : g) exact = exact && v.exact.has_value();
    if (exact) {
      const GeodesicCoeffs2 k{*g[0].exact, *g[1].exact, *g[2].exact, *g[3].exact, *g[4].exact, *g[5].exact};
      const CubicCoeffs built = build_cubic_2d(k);
      const auto bf = built.fields();
      for (std::size_t i = 0; i < 8; ++i)
        if (!(*bf[i] == RationalExpr(a_[i]))) return Outcome::Rejected;
      return is_linearizable2(k) ? Outcome::Exact : Outcome::Rejected;
    }
    std::array<double, 6> d;
    for (std::size_t i = 0; i < 6; ++i) d[i] = g[i].approx;
    const auto s = constant_system(d);
    const double tol = 1e-12 * scale_;
    for (std::size_t i = 0; i < 8; ++i)
      if (std::fabs(s[i] - a_[i].get_d()) > tol) return Outcome::Rejected;
    for (std::size_t i = 8; i < 11; ++i)
      if (std::fabs(s[i]) > tol) return Outcome::Rejected;
    return Outcome::Numeric;
  }

  bool same(const Candidate& x, const Candidate& y) const {
    for (std::size_t i = 0; i < 6; ++i) {
      if (x[i].exact && y[i].exact) {
        if (*x[i].exact != *y[i].exact) return false;
      } else if (std::fabs(x[i].approx - y[i].approx) > 1e-9 * scale_) {
        return false;
      }
    }
    return true;
  }

  /// Records an accepted candidate; returns false for rejects and duplicates.
  bool offer(const Candidate& g, const std::string& label) {
    const Outcome o = validate(g);
    if (o == Outcome::Rejected) return false;
    for (const auto& [c, l] : accepted_)
      if (same(c, g)) return false;
    accepted_.emplace_back(g, label);
    if (o == Outcome::Exact) {
      exact_.emplace_back(GeodesicCoeffs2{*g[0].exact, *g[1].exact, *g[2].exact, *g[3].exact, *g[4].exact,
                                          *g[5].exact},
                          label);
    } else {
      numeric_.emplace_back(g, label);
    }
    return true;
  }

  const std::vector<std::pair<GeodesicCoeffs2, std::string>>& exact() const { return exact_; }
  const std::vector<std::pair<Candidate, std::string>>& numeric() const { return numeric_; }

 private:
  std::array<BigRational, 8> a_;
  double scale_ = 1;
  std::vector<std::pair<Candidate, std::string>> accepted_;
  std::vector<std::pair<GeodesicCoeffs2, std::string>> exact_;
  std::vector<std::pair<Candidate, std::string>> numeric_;
};

enum Idx { P, Q, R, S, T, U, V, W };

// ---- case walk ------------------------------------------------------------------

void case_b0_c0_d0(Search& s) {
  const Num zero;
  for (const Num& a : s.roots(-(Num(s.A(P)) / Num(2))))
    for (const Num& f : s.roots(-(Num(s.A(W)) / Num(2)))) {
      s.offer({a, zero, zero, zero, zero, f}, "1.1.1");
      // e = a is the only nonzero root of e^2 = a e.
      if (!s.near_zero(a)) s.offer({a, zero, zero, zero, a, f}, "1.1.2");
    }
}

void case_b0_c0(Search& s) {
  const Num zero;
  const Num p(s.A(P)), t(s.A(T)), u(s.A(U)), w(s.A(W));
  for (const Num& a : s.roots(-(p / Num(2))))
    for (const Num& e : s.roots(-(u / Num(6))))
      for (const Num& f : s.roots(-(w / Num(2)))) {
        std::vector<Num> ds;
        if (!s.near_zero(a + e)) ds.push_back(-(t / (Num(2) * (a + e))));
        if (!s.near_zero(f)) ds.push_back((e * e - a * e) / f);
        for (const Num& r : s.roots(Num(3) * p * u)) {
          const Num den = Num(2) * (Num(-3) * p - u + Num(2) * r);
          if (s.near_zero(den)) continue;
          for (const Num& d : s.roots(Num(3) * t * t / den)) ds.push_back(d);
        }
        for (const Num& d : ds)
          if (!s.near_zero(d)) s.offer({a, zero, zero, d, e, f}, "1.2");
      }
}

void case_b0_d0(Search& s) {
  const Num zero;
  const Num p(s.A(P)), r(s.A(R)), sv(s.A(S)), v(s.A(V)), w(s.A(W));
  for (const Num& a : s.roots(-(p / Num(2)))) {
    std::vector<std::pair<Num, Num>> cf;
    if (!s.near_zero(a)) {
      cf.emplace_back(-(r / (Num(6) * a)), -(v / (Num(6) * a)));
    } else {
      for (const Num& f : s.roots(-(w / Num(2))))
        if (!s.near_zero(f)) cf.emplace_back(-(sv / (Num(2) * f)), f);
    }
    if (!s.near_zero(p)) {
      for (const Num& c : s.roots(-(r * r) / (Num(18) * p)))
        for (const Num& f : s.roots(-(v * v) / (Num(18) * p))) cf.emplace_back(c, f);
    }
    for (const auto& [c, f] : cf)
      if (!s.near_zero(c)) s.offer({a, zero, c, zero, a, f}, "1.3");
  }
}

void case_d0(Search& s) {
  const Num zero;
  const Num p(s.A(P)), r(s.A(R)), sv(s.A(S)), w(s.A(W));
  for (const Num& a : s.roots(-(p / Num(2))))
    for (const Num& b : s.roots(-(r / Num(6)))) {
      if (s.near_zero(b)) continue;
      for (const Num& f : s.roots(-(w / Num(2)))) {
        std::vector<Num> cs;
        if (!s.near_zero(b + f)) cs.push_back(-(sv / (Num(2) * (b + f))));
        if (!s.near_zero(a)) cs.push_back((b * b - b * f) / a);
        for (const Num& q : s.roots(Num(3) * r * w)) {
          const Num den = Num(2) * (Num(-3) * w - r + Num(2) * q);
          if (s.near_zero(den)) continue;
          for (const Num& c : s.roots(Num(3) * sv * sv / den)) cs.push_back(c);
        }
        for (const Num& c : cs) s.offer({a, b, c, zero, zero, f}, "2.1");
      }
    }
}

// ---- nullspace search -------------------------------------------------------------

std::string pattern_label(const std::vector<BigRational>& v) {
  const bool b = sgn(v[1]) != 0, c = sgn(v[2]) != 0, d = sgn(v[3]) != 0, e = sgn(v[4]) != 0;
  if (b) return d ? "2.2" : "2.1";
  if (!c && !d) return e ? "1.1.2" : "1.1.1";
  if (!c) return "1.2";
  return "1.3";
}

// Every solution lies in the kernel of the constant matrix, and the system is
// homogeneous quadratic, so along a kernel direction w only the scale is free.
void scale_along(Search& s, const std::array<Num, 6>& w, const std::string& label) {
  const auto q = constant_system(w);
  for (std::size_t k = 0; k < 8; ++k) {
    if (s.near_zero(q[k])) continue;
    for (const Num& lambda : s.roots(Num(s.A(k)) / q[k])) {
      Candidate g;
      for (std::size_t i = 0; i < 6; ++i) g[i] = lambda * w[i];
      s.offer(g, label);
    }
    return;
  }
}

std::array<Num, 6> to_num(const std::vector<BigRational>& v) {
  std::array<Num, 6> out;
  for (std::size_t i = 0; i < 6; ++i) out[i] = Num(v[i]);
  return out;
}

void kernel_dim1(Search& s, const std::vector<BigRational>& v) { scale_along(s, to_num(v), pattern_label(v)); }

// On a 2D kernel span(v1, v2) each condition is a binary quadratic form in the
// weights; a nonzero form fixes at most two directions.
void kernel_dim2(Search& s, const std::vector<BigRational>& v1, const std::vector<BigRational>& v2) {
  std::array<BigRational, 6> sum;
  std::array<BigRational, 6> x1, x2;
  for (std::size_t i = 0; i < 6; ++i) {
    x1[i] = v1[i];
    x2[i] = v2[i];
    sum[i] = v1[i] + v2[i];
  }
  const auto f1 = constant_system(x1);
  const auto f2 = constant_system(x2);
  const auto f12 = constant_system(sum);
  using Form = std::array<BigRational, 3>;
  std::vector<Form> forms;
  auto form = [&](std::size_t k) -> Form { return {f1[k], f12[k] - f1[k] - f2[k], f2[k]}; };
  for (std::size_t k = 8; k < 11; ++k) forms.push_back(form(k));
  for (std::size_t k = 0; k < 8; ++k)
    for (std::size_t m = k + 1; m < 8; ++m) {
      const Form fk = form(k), fm = form(m);
      forms.push_back({s.A(k) * fm[0] - s.A(m) * fk[0], s.A(k) * fm[1] - s.A(m) * fk[1],
                       s.A(k) * fm[2] - s.A(m) * fk[2]});
    }
  std::vector<std::pair<Num, Num>> dirs;
  const auto nonzero = std::find_if(forms.begin(), forms.end(), [](const Form& f) {
    return sgn(f[0]) != 0 || sgn(f[1]) != 0 || sgn(f[2]) != 0;
  });
  if (nonzero == forms.end()) {
    dirs = {{Num(1), Num(0)}, {Num(0), Num(1)}, {Num(1), Num(1)}};
  } else {
    const Num al((*nonzero)[0]), be((*nonzero)[1]), ga((*nonzero)[2]);
    if (sgn((*nonzero)[0]) == 0) {
      dirs.emplace_back(Num(1), Num(0));
      if (sgn((*nonzero)[1]) != 0) dirs.emplace_back(-(ga / be), Num(1));
    } else {
      for (const Num& r : s.roots(be * be - Num(4) * al * ga)) dirs.emplace_back((r - be) / (Num(2) * al), Num(1));
    }
  }
  for (const auto& [t1, t2] : dirs) {
    std::array<Num, 6> w;
    std::vector<BigRational> pattern(6);
    for (std::size_t i = 0; i < 6; ++i) {
      w[i] = t1 * Num(v1[i]) + t2 * Num(v2[i]);
      pattern[i] = s.near_zero(w[i]) ? BigRational(0) : BigRational(1);
    }
    scale_along(s, w, pattern_label(pattern));
  }
}

// ---- printed case conditions ---------------------------------------------------------

struct Printed {
  std::string label;
  std::vector<std::pair<std::string, bool>> conditions;
};

std::vector<Printed> printed_conditions(const Search& s) {
  auto z = [&](std::size_t i) { return sgn(s.A(i)) == 0; };
  auto le = [&](std::size_t i) { return sgn(s.A(i)) <= 0; };
  auto lt = [&](std::size_t i) { return sgn(s.A(i)) < 0; };
  const BigRational& p = s.A(P);
  const BigRational& q = s.A(Q);
  const BigRational& r = s.A(R);
  const BigRational& sv = s.A(S);
  const BigRational& u = s.A(U);
  const BigRational& v = s.A(V);
  const BigRational& w = s.A(W);
  return {
      {"1.1.1",
       {{"Q = R = S = T = U = V = 0", z(Q) && z(R) && z(S) && z(T) && z(U) && z(V)},
        {"P <= 0", le(P)},
        {"W <= 0", le(W)}}},
      {"1.1.2",
       {{"Q = R = S = T = 0", z(Q) && z(R) && z(S) && z(T)},
        {"V^2 - 9PW = 0", sgn(v * v - 9 * p * w) == 0},
        {"U - 3P = 0", sgn(u - 3 * p) == 0},
        {"P, U, W <= 0", le(P) && le(U) && le(W)}}},
      {"1.2",
       {{"Q = R = S = 0", z(Q) && z(R) && z(S)},
        {"V^2 - 3UW = 0", sgn(v * v - 3 * u * w) == 0},
        {"P, U <= 0, W < 0", le(P) && le(U) && lt(W)}}},
      {"1.3",
       {{"Q = T = 0", z(Q) && z(T)},
        {"U - 3P = 0", sgn(u - 3 * p) == 0},
        {"9PW - 3PR - V^2 = 0", sgn(9 * p * w - 3 * p * r - v * v) == 0},
        {"81P^2S^2 - R^2V^2 = 0", sgn(81 * p * p * sv * sv - r * r * v * v) == 0},
        {"P < 0, U <= 0", lt(P) && le(U)}}},
      {"2.1",
       {{"T = U = V = 0", z(T) && z(U) && z(V)},
        {"Q^2 - 3PR = 0", sgn(q * q - 3 * p * r) == 0},
        {"P < 0, R <= 0, W <= 0", lt(P) && le(R) && le(W)}}},
  };
}

std::string format(const Candidate& g) {
  std::ostringstream os;
  os.precision(12);
  static constexpr const char* kNames[] = {"a", "b", "c", "d", "e", "f"};
  for (std::size_t i = 0; i < 6; ++i) {
    if (i > 0) os << ", ";
    os << kNames[i] << " = ";
    if (g[i].exact) {
      os << g[i].exact->get_str();
    } else {
      // Adding 0.0 turns -0 into 0.
      os << g[i].approx + 0.0 << " (" << kNames[i] << "^2 = " << g[i].approx * g[i].approx << ")";
    }
  }
  return os.str();
}

}  // namespace

ConstantMatrix6 constant_matrix(const CubicCoeffs& A) {
  if (!A.is_constant()) throw NotConstant("the constant-coefficient matrix needs constant P..W");
  const auto m = compatibility_matrix(A);
  ConstantMatrix6 out;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) out[i][j] = m[i][j].constant_value();
  return out;
}

BigRational constant_determinant(const CubicCoeffs& A) {
  const ConstantMatrix6 m = constant_matrix(A);
  sym::Matrix<BigRational> dense(6);
  for (std::size_t i = 0; i < 6; ++i) dense[i].assign(m[i].begin(), m[i].end());
  return sym::determinant(std::move(dense));
}

LinearizabilityReport classify_constant(const CubicCoeffs& A) {
  const ConstantMatrix6 m = constant_matrix(A);
  LinearizabilityReport rep;
  rep.path = CheckPath::ConstantCase;
  sym::Matrix<BigRational> dense(6);
  for (std::size_t i = 0; i < 6; ++i) dense[i].assign(m[i].begin(), m[i].end());
  const BigRational det = sym::determinant(dense);
  if (sgn(det) != 0) {
    rep.verdict = Verdict::NotLinearizable;
    rep.failed_conditions.push_back({"constant determinant = 0", det.get_str()});
    return rep;
  }

  Search s(A);
  case_b0_c0_d0(s);
  case_b0_c0(s);
  case_b0_d0(s);
  case_d0(s);
  const auto kernel = sym::nullspace(dense);
  if (kernel.size() == 1) kernel_dim1(s, kernel[0]);
  if (kernel.size() == 2) kernel_dim2(s, kernel[0], kernel[1]);

  const auto printed = printed_conditions(s);
  for (const auto& pc : printed) {
    std::string failed;
    for (const auto& [name, ok] : pc.conditions)
      if (!ok) failed += (failed.empty() ? "" : "; ") + name;
    rep.notes.push_back("case " + pc.label + " printed conditions: " + (failed.empty() ? "hold" : "fail " + failed));
  }
  rep.notes.push_back("kernel dimension " + std::to_string(kernel.size()));

  if (!s.exact().empty()) {
    rep.verdict = Verdict::Linearizable;
    rep.case_label = s.exact().front().second;
    for (const auto& [g, label] : s.exact()) rep.branches.push_back(g);
  } else if (!s.numeric().empty()) {
    rep.verdict = Verdict::LinearizableNumeric;
    rep.case_label = s.numeric().front().second;
  }
  for (const auto& [g, label] : s.numeric())
    rep.notes.push_back("irrational branch (case " + label + "), validated to 12 digits: " + format(g));
  if (!s.exact().empty() || !s.numeric().empty()) return rep;

  // Only b != 0, d != 0 escapes the closed-form walk; the kernel searches are
  // complete in dimensions 1 and 2.
  bool b_free = false;
  bool d_free = false;
  for (const auto& v : kernel) {
    b_free = b_free || sgn(v[1]) != 0;
    d_free = d_free || sgn(v[3]) != 0;
  }
  if (kernel.size() >= 3 && b_free && d_free) {
    rep.verdict = Verdict::Inconclusive;
    rep.case_label = "2.2";
    rep.notes.push_back("b != 0, d != 0 with a kernel of dimension >= 3 is not resolved");
    return rep;
  }
  rep.verdict = Verdict::NotLinearizable;
  for (const auto& pc : printed)
    for (const auto& [name, ok] : pc.conditions)
      if (!ok) rep.failed_conditions.push_back({"case " + pc.label + ": " + name, "fails"});
  rep.failed_conditions.push_back({"real constant solution", "none reproduces the coefficients"});
  return rep;
}

}  // namespace lincheck::criteria
