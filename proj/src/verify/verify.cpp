#include "lincheck/verify/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include <Eigen/Dense>

#include "lincheck/errors.hpp"

namespace lincheck::verify {

using sym::Var;

namespace {

/// Double-coefficient copy of a rational function for the integrator's inner
/// loop.
class CompiledRational {
 public:
  explicit CompiledRational(const RationalExpr& r) : source_(r) {
    compile(r.num(), num_);
    compile(r.den(), den_);
  }

  double operator()(double x, double y) const {
    const double d = eval(den_, x, y);
    if (d == 0.0) throw EvalDomainError("pole", source_.to_string());
    return eval(num_, x, y) / d;
  }

 private:
  struct Term {
    double c;
    std::uint32_t ex, ey;
  };

  static void compile(const sym::Polynomial& p, std::vector<Term>& out) {
    for (const auto& t : p.terms()) out.push_back({t.coeff.get_d(), t.mono.x, t.mono.y});
  }

  static double eval(const std::vector<Term>& terms, double x, double y) {
    double acc = 0.0;
    for (const Term& t : terms) {
      double v = t.c;
      for (std::uint32_t i = 0; i < t.ex; ++i) v *= x;
      for (std::uint32_t j = 0; j < t.ey; ++j) v *= y;
      acc += v;
    }
    return acc;
  }

  RationalExpr source_;
  std::vector<Term> num_, den_;
};

template <std::size_t N>
using Vec = std::array<double, N>;

template <std::size_t N>
Vec<N> axpy(const Vec<N>& y, double h, const Vec<N>& k) {
  Vec<N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = y[i] + h * k[i];
  return out;
}

std::size_t step_count(const NumericState& init, double s_end, double step, const IntegrationOptions& opts) {
  if (!(step > 0.0) || !std::isfinite(step)) throw InvalidArgument("step must be positive and finite");
  const double span = s_end - init.s;
  if (!(span >= 0.0) || !std::isfinite(span)) throw InvalidArgument("s_end must not precede the initial s");
  const double raw = span / step;
  if (raw > static_cast<double>(opts.max_steps) + 0.5)
    throw StepLimitExceeded(static_cast<std::size_t>(std::ceil(raw)), opts.max_steps);
  return static_cast<std::size_t>(std::floor(raw + 1e-9));
}

template <std::size_t N, typename Rhs>
Trajectory rk4(const Rhs& f, const NumericState& init, double s_end, double step, const IntegrationOptions& opts,
               std::string source) {
  const std::size_t n = step_count(init, s_end, step, opts);
  Trajectory traj;
  traj.step = step;
  traj.coeff_source = std::move(source);
  traj.samples.reserve(n + 1);
  Vec<N> y;
  std::copy(init.values.begin(), init.values.end(), y.begin());
  traj.samples.push_back(init);
  for (std::size_t k = 1; k <= n; ++k) {
    const Vec<N> k1 = f(y);
    const Vec<N> k2 = f(axpy(y, step / 2, k1));
    const Vec<N> k3 = f(axpy(y, step / 2, k2));
    const Vec<N> k4 = f(axpy(y, step, k3));
    Vec<N> next;
    bool finite = true;
    for (std::size_t i = 0; i < N; ++i) {
      next[i] = y[i] + step / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
      finite = finite && std::isfinite(next[i]);
    }
    if (!finite) break;
    y = next;
    traj.samples.push_back({init.order, std::vector<double>(y.begin(), y.end()), init.s + static_cast<double>(k) * step});
  }
  return traj;
}

void require_order(const NumericState& s, int order) {
  if (s.order != order || s.values.size() != static_cast<std::size_t>(2 * order))
    throw InvalidArgument("initial state must have order " + std::to_string(order) + " with " +
                          std::to_string(2 * order) + " values");
}

std::string describe(const std::array<const RationalExpr*, 6>& c, const char* names) {
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ", ";
    out += names[i];
    out += " = " + c[i]->to_string();
  }
  return out;
}

// ---- atoms for metric_from_transform -----------------------------------------

/// Polynomial in function-call atoms with rational-function coefficients.
/// Exponent vectors have no trailing zeros.
using AtomExps = std::vector<unsigned>;
using AtomPoly = std::map<AtomExps, RationalExpr>;

class AtomRing {
 public:
  explicit AtomRing(const Bindings& b) : bindings_(b) {}

  AtomPoly convert(const ExprTree& e) {
    using sym::NodeKind;
    if (!e.contains_transcendental()) return scalar(sym::to_rational(e, bindings_));
    switch (e.kind()) {
      case NodeKind::Sum:
        return add(convert(e.lhs()), convert(e.rhs()), false);
      case NodeKind::Difference:
        return add(convert(e.lhs()), convert(e.rhs()), true);
      case NodeKind::Product:
        return mul(convert(e.lhs()), convert(e.rhs()));
      case NodeKind::Negate:
        return add({}, convert(e.lhs()), true);
      case NodeKind::Quotient: {
        const AtomPoly den = convert(e.rhs());
        if (den.size() != 1 || !den.begin()->first.empty())
          throw NotSimplifiable("division by a transcendental expression: " + sym::to_string(e.rhs()));
        AtomPoly out = convert(e.lhs());
        for (auto& [k, v] : out) v /= den.begin()->second;
        return out;
      }
      case NodeKind::Power: {
        if (e.exponent() < 0) throw NotSimplifiable("negative power of a transcendental expression: " + sym::to_string(e));
        const AtomPoly base = convert(e.lhs());
        AtomPoly out = scalar(RationalExpr(1));
        for (long i = 0; i < e.exponent(); ++i) out = mul(out, base);
        return out;
      }
      case NodeKind::Function: {
        AtomExps exps(atom_index(e) + 1, 0);
        exps.back() = 1;
        return {{exps, RationalExpr(1)}};
      }
      default:
        return scalar(sym::to_rational(e, bindings_));
    }
  }

  /// Rewrites sin(φ)^2 to 1 - cos(φ)^2 wherever both atoms are present, then
  /// requires the result to be atom-free.
  RationalExpr reduce(AtomPoly p, const std::string& what) const {
    for (std::size_t s = 0; s < atoms_.size(); ++s) {
      if (atoms_[s].func() != sym::Func::Sin) continue;
      std::size_t c = 0;
      while (c < atoms_.size() && !(atoms_[c].func() == sym::Func::Cos && atoms_[c].lhs() == atoms_[s].lhs())) ++c;
      if (c == atoms_.size()) continue;
      for (bool changed = true; changed;) {
        changed = false;
        for (auto it = p.begin(); it != p.end(); ++it) {
          if (it->first.size() <= s || it->first[s] < 2) continue;
          AtomExps lowered = it->first;
          lowered[s] -= 2;
          AtomExps with_cos = lowered;
          if (with_cos.size() <= c) with_cos.resize(c + 1, 0);
          with_cos[c] += 2;
          const RationalExpr coeff = it->second;
          p.erase(it);
          AtomPoly repl{{trim(lowered), coeff}, {trim(with_cos), -coeff}};
          p = add(p, repl, false);
          changed = true;
          break;
        }
      }
    }
    for (const auto& [k, v] : p)
      if (!k.empty()) throw NotSimplifiable(what + " keeps transcendental terms after the sin^2 + cos^2 rewrite");
    return p.empty() ? RationalExpr() : p.begin()->second;
  }

  static AtomPoly add(AtomPoly a, const AtomPoly& b, bool subtract) {
    for (const auto& [k, v] : b) {
      RationalExpr& slot = a[k];
      slot = subtract ? slot - v : slot + v;
      if (slot.is_zero()) a.erase(k);
    }
    return a;
  }

  static AtomPoly mul(const AtomPoly& a, const AtomPoly& b) {
    AtomPoly out;
    for (const auto& [ka, va] : a)
      for (const auto& [kb, vb] : b) {
        AtomExps k(std::max(ka.size(), kb.size()), 0);
        for (std::size_t i = 0; i < ka.size(); ++i) k[i] += ka[i];
        for (std::size_t i = 0; i < kb.size(); ++i) k[i] += kb[i];
        out = add(std::move(out), {{k, va * vb}}, false);
      }
    return out;
  }

 private:
  static AtomPoly scalar(const RationalExpr& r) {
    if (r.is_zero()) return {};
    return {{AtomExps{}, r}};
  }

  static AtomExps trim(AtomExps e) {
    while (!e.empty() && e.back() == 0) e.pop_back();
    return e;
  }

  std::size_t atom_index(const ExprTree& f) {
    for (std::size_t i = 0; i < atoms_.size(); ++i)
      if (atoms_[i] == f) return i;
    atoms_.push_back(f);
    return atoms_.size() - 1;
  }

  const Bindings& bindings_;
  std::vector<ExprTree> atoms_;
};

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1p-53;
}

}  // namespace

Trajectory integrate_second(const GeodesicCoeffs2& g, const NumericState& init, double s_end, double step,
                            const IntegrationOptions& opts) {
  require_order(init, 2);
  const CompiledRational a(g.a), b(g.b), c(g.c), d(g.d), e(g.e), f(g.f);
  auto rhs = [&](const Vec<4>& s) -> Vec<4> {
    const double x = s[0], y = s[1], p = s[2], q = s[3];
    return {p, q, a(x, y) * p * p + 2 * b(x, y) * p * q + c(x, y) * q * q,
            d(x, y) * p * p + 2 * e(x, y) * p * q + f(x, y) * q * q};
  };
  return rk4<4>(rhs, init, s_end, step, opts, describe({&g.a, &g.b, &g.c, &g.d, &g.e, &g.f}, "abcdef"));
}

Trajectory integrate_third(const CubicCoeffs& A, const NumericState& init, double s_end, double step,
                           const IntegrationOptions& opts) {
  require_order(init, 3);
  const CompiledRational P(A.P), Q(A.Q), R(A.R), S(A.S), T(A.T), U(A.U), V(A.V), W(A.W);
  auto rhs = [&](const Vec<6>& s) -> Vec<6> {
    const double x = s[0], y = s[1], p = s[2], q = s[3];
    const double p2 = p * p, q2 = q * q;
    return {p, q, s[4], s[5], -(P(x, y) * p2 * p + Q(x, y) * p2 * q + R(x, y) * p * q2 + S(x, y) * q2 * q),
            -(T(x, y) * p2 * p + U(x, y) * p2 * q + V(x, y) * p * q2 + W(x, y) * q2 * q)};
  };
  std::string source = "P = " + A.P.to_string() + ", Q = " + A.Q.to_string() + ", R = " + A.R.to_string() +
                       ", S = " + A.S.to_string() + ", T = " + A.T.to_string() + ", U = " + A.U.to_string() +
                       ", V = " + A.V.to_string() + ", W = " + A.W.to_string();
  return rk4<6>(rhs, init, s_end, step, opts, std::move(source));
}

NumericState lift_to_third(const GeodesicCoeffs2& g, const NumericState& state) {
  require_order(state, 2);
  const double x = state.values[0], y = state.values[1], p = state.values[2], q = state.values[3];
  auto quad = [&](const RationalExpr& u, const RationalExpr& v, const RationalExpr& w) {
    return CompiledRational(u)(x, y) * p * p + 2 * CompiledRational(v)(x, y) * p * q + CompiledRational(w)(x, y) * q * q;
  };
  NumericState out{3, state.values, state.s};
  out.values.push_back(quad(g.a, g.b, g.c));
  out.values.push_back(quad(g.d, g.e, g.f));
  return out;
}

std::vector<PushedSample> pushforward(const Trajectory& traj, const TransformPair& t, const Bindings& bindings) {
  std::vector<PushedSample> out;
  out.reserve(traj.samples.size());
  for (const NumericState& st : traj.samples) {
    const double x = st.values.at(0), y = st.values.at(1);
    out.push_back({st.s, sym::eval_numeric(t.u, x, y, bindings), sym::eval_numeric(t.v, x, y, bindings)});
  }
  return out;
}

double linearity_residual(const std::vector<std::pair<double, double>>& samples, int degree) {
  if (degree < 0) throw InvalidArgument("fit degree must be non-negative");
  if (samples.size() < static_cast<std::size_t>(degree) + 2)
    throw InvalidArgument("fit of degree " + std::to_string(degree) + " needs at least " + std::to_string(degree + 2) +
                          " samples");
  double lo = samples.front().first, hi = lo, vmax = 0.0;
  for (const auto& [s, v] : samples) {
    lo = std::min(lo, s);
    hi = std::max(hi, s);
    vmax = std::max(vmax, std::abs(v));
  }
  if (hi == lo) throw DegenerateFit("all sample parameters coincide");
  // Basis in t = (2s - hi - lo)/(hi - lo) on [-1, 1], solved by column-pivoted QR.
  const auto n = static_cast<Eigen::Index>(samples.size());
  Eigen::MatrixXd V(n, degree + 1);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = (2 * samples[i].first - hi - lo) / (hi - lo);
    double pw = 1.0;
    for (int j = 0; j <= degree; ++j, pw *= t) V(i, j) = pw;
    rhs(i) = samples[i].second;
  }
  const Eigen::VectorXd coef = V.colPivHouseholderQr().solve(rhs);
  const double dev = (V * coef - rhs).cwiseAbs().maxCoeff();
  return dev / (1.0 + vmax);
}

std::string VelocityQuadratic::to_string() const {
  std::string out;
  auto term = [&](const RationalExpr& c, const char* mono) {
    if (c.is_zero()) return;
    if (!out.empty()) out += " + ";
    out += "(" + c.to_string() + ")*" + mono;
  };
  term(xx, "x'^2");
  term(xy, "x'*y'");
  term(yy, "y'^2");
  return out.empty() ? "0" : out;
}

std::array<VelocityQuadratic, 2> symbolic_linearization_residual(const GeodesicCoeffs2& g, const TransformPair& t,
                                                                 const Bindings& bindings) {
  auto along = [&](const ExprTree& tree) {
    const RationalExpr u = sym::to_rational(tree, bindings);
    const RationalExpr ux = u.diff(Var::X), uy = u.diff(Var::Y);
    const RationalExpr two(2);
    return VelocityQuadratic{ux.diff(Var::X) + ux * g.a + uy * g.d,
                             two * (ux.diff(Var::Y) + ux * g.b + uy * g.e),
                             uy.diff(Var::Y) + ux * g.c + uy * g.f};
  };
  return {along(t.u), along(t.v)};
}

Metric2Components metric_from_transform(const TransformPair& t, const Bindings& bindings) {
  if (!t.u.contains_transcendental() && !t.v.contains_transcendental()) {
    const RationalExpr u = sym::to_rational(t.u, bindings), v = sym::to_rational(t.v, bindings);
    const RationalExpr ux = u.diff(Var::X), uy = u.diff(Var::Y), vx = v.diff(Var::X), vy = v.diff(Var::Y);
    return {ux * ux + vx * vx, ux * uy + vx * vy, uy * uy + vy * vy};
  }
  AtomRing ring(bindings);
  const AtomPoly ux = ring.convert(sym::diff_tree(t.u, Var::X));
  const AtomPoly uy = ring.convert(sym::diff_tree(t.u, Var::Y));
  const AtomPoly vx = ring.convert(sym::diff_tree(t.v, Var::X));
  const AtomPoly vy = ring.convert(sym::diff_tree(t.v, Var::Y));
  auto form = [&](const AtomPoly& a, const AtomPoly& b, const AtomPoly& c, const AtomPoly& d, const char* name) {
    return ring.reduce(AtomRing::add(AtomRing::mul(a, b), AtomRing::mul(c, d), false), name);
  };
  return {form(ux, ux, vx, vx, "p"), form(ux, uy, vx, vy, "q"), form(uy, uy, vy, vy, "r")};
}

std::array<double, 3> metric_numeric(const TransformPair& t, double x, double y, const Bindings& bindings) {
  auto at = [&](const ExprTree& e, Var v) { return sym::eval_numeric(sym::diff_tree(e, v), x, y, bindings); };
  const double ux = at(t.u, Var::X), uy = at(t.u, Var::Y), vx = at(t.v, Var::X), vy = at(t.v, Var::Y);
  return {ux * ux + vx * vx, ux * uy + vx * vy, uy * uy + vy * vy};
}

tensor::Metric to_metric(const Metric2Components& m) { return tensor::Metric({{m.p, m.q}, {m.q, m.r}}); }

std::vector<NumericState> seeded_initial_states(std::uint64_t seed, std::size_t count, double cx, double cy) {
  std::mt19937_64 rng(seed);
  std::vector<NumericState> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double x = cx + uniform(rng, -0.5, 0.5);
    const double y = cy + uniform(rng, -0.5, 0.5);
    const double p = uniform(rng, -0.3, 0.3);
    const double q = uniform(rng, -0.3, 0.3);
    out.push_back({2, {x, y, p, q}, 0.0});
  }
  return out;
}

}  // namespace lincheck::verify
