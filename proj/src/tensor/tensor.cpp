#include "lincheck/tensor/tensor.hpp"

#include "lincheck/errors.hpp"

namespace lincheck::tensor {

using sym::Var;

RationalExpr coord_diff(const RationalExpr& f, std::size_t l) {
  if (l == 0) return f.diff(Var::X);
  if (l == 1) return f.diff(Var::Y);
  return RationalExpr();
}

namespace {

using sym::Polynomial;

Polynomial pdiff(const Polynomial& f, std::size_t l) {
  if (l == 0) return f.diff(Var::X);
  if (l == 1) return f.diff(Var::Y);
  return Polynomial();
}

// Components written over one shared polynomial denominator.
struct Lifted {
  Polynomial den;
  std::vector<Polynomial> num;
};

Lifted lift(const std::vector<RationalExpr>& c) {
  Lifted out{Polynomial(1), {}};
  for (const auto& e : c) {
    if (e.is_zero() || e.den() == out.den) continue;
    out.den = Polynomial::lcm(out.den, e.den());
  }
  out.num.reserve(c.size());
  for (const auto& e : c)
    out.num.push_back(e.is_zero() ? Polynomial() : e.num() * Polynomial::quotient(out.den, e.den()));
  return out;
}

void add_product(Polynomial& acc, const Polynomial& a, const Polynomial& b, bool subtract) {
  if (a.is_zero() || b.is_zero()) return;
  if (subtract) {
    acc -= a * b;
  } else {
    acc += a * b;
  }
}

// Numerators rho of R^i_jkl = rho / L^2 for Γ = gamma / L, indexed like RiemannUp.
std::vector<Polynomial> riemann_numerators(const Lifted& G, std::size_t n) {
  auto g = [&](std::size_t i, std::size_t j, std::size_t k) -> const Polynomial& { return G.num[(i * n + j) * n + k]; };
  std::vector<Polynomial> dL(n);
  for (std::size_t l = 0; l < n; ++l) dL[l] = pdiff(G.den, l);
  std::vector<Polynomial> rho(n * n * n * n);
  auto at = [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) -> Polynomial& {
    return rho[((i * n + j) * n + k) * n + l];
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l) {
          // d_k(γ/L) = (γ_k L - γ L_k) / L^2
          Polynomial v = (pdiff(g(i, j, l), k) - pdiff(g(i, j, k), l)) * G.den;
          add_product(v, g(i, j, l), dL[k], true);
          add_product(v, g(i, j, k), dL[l], false);
          for (std::size_t m = 0; m < n; ++m) {
            add_product(v, g(i, m, k), g(m, j, l), false);
            add_product(v, g(i, m, l), g(m, j, k), true);
          }
          at(i, j, l, k) = -v;
          at(i, j, k, l) = std::move(v);
        }
  return rho;
}

}  // namespace

Components::Components(std::size_t dim, std::size_t rank) : dim_(dim), rank_(rank) {
  std::size_t n = 1;
  for (std::size_t r = 0; r < rank; ++r) n *= dim;
  data_.resize(n);
}

bool Components::is_zero() const {
  for (const auto& c : data_)
    if (!c.is_zero()) return false;
  return true;
}

std::size_t Components::index(std::initializer_list<std::size_t> idx) const {
  std::size_t k = 0;
  for (std::size_t i : idx) k = k * dim_ + i;
  return k;
}

// ---- metric -----------------------------------------------------------------

Metric::Metric(const sym::Matrix<RationalExpr>& g) : Components(g.size(), 2) {
  const std::size_t n = g.size();
  if (n == 0) throw InvalidMetric("metric must have positive dimension");
  for (std::size_t i = 0; i < n; ++i) {
    if (g[i].size() != n) throw InvalidMetric("metric matrix is not square");
    for (std::size_t j = 0; j < n; ++j) {
      if (!(g[i][j] == g[j][i]))
        throw InvalidMetric("metric is not symmetric at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                            ")");
      ref({i, j}) = g[i][j];
    }
  }
  det_ = sym::determinant(g);
  if (det_.is_zero()) throw SingularMetric("metric determinant is identically zero");
}

Metric Metric::identity(std::size_t n) {
  sym::Matrix<RationalExpr> m(n, std::vector<RationalExpr>(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return Metric(m);
}

Metric Metric::diagonal(const std::vector<RationalExpr>& entries) {
  const std::size_t n = entries.size();
  sym::Matrix<RationalExpr> m(n, std::vector<RationalExpr>(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = entries[i];
  return Metric(m);
}

sym::Matrix<RationalExpr> Metric::matrix() const {
  const std::size_t n = dim();
  sym::Matrix<RationalExpr> m(n, std::vector<RationalExpr>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = (*this)(i, j);
  return m;
}

Metric inverse_metric(const Metric& g) {
  const std::size_t n = g.dim();
  const sym::Matrix<RationalExpr> m = g.matrix();
  const RationalExpr inv_det = g.determinant().inverse();
  sym::Matrix<RationalExpr> inv(n, std::vector<RationalExpr>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      // Cofactor C_ji, using symmetry of g.
      sym::Matrix<RationalExpr> minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        std::vector<RationalExpr> row;
        for (std::size_t c = 0; c < n; ++c)
          if (c != i) row.push_back(m[r][c]);
        minor.push_back(std::move(row));
      }
      RationalExpr cof = n == 1 ? RationalExpr(1) : sym::determinant(minor);
      if ((i + j) % 2 == 1) cof = -cof;
      inv[i][j] = cof * inv_det;
      inv[j][i] = inv[i][j];
    }
  }
  return Metric(inv);
}

// ---- connection and curvature ------------------------------------------------

void Christoffel::set(std::size_t i, std::size_t j, std::size_t k, const RationalExpr& v) {
  ref({i, j, k}) = v;
  ref({i, k, j}) = v;
}

Christoffel christoffel_from_metric(const Metric& g) {
  const std::size_t n = g.dim();
  const Metric ginv = inverse_metric(g);
  // dg[(j*n + l)*n + k] = g_jl,k
  std::vector<RationalExpr> dg(n * n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t l = 0; l < n; ++l)
      for (std::size_t k = 0; k < n; ++k) dg[(j * n + l) * n + k] = coord_diff(g(j, l), k);
  auto d = [&](std::size_t a, std::size_t b, std::size_t c) -> const RationalExpr& { return dg[(a * n + b) * n + c]; };

  Christoffel gamma(n);
  const RationalExpr half(BigRational(1, 2));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = j; k < n; ++k) {
        RationalExpr s;
        for (std::size_t l = 0; l < n; ++l) {
          if (ginv(i, l).is_zero()) continue;
          RationalExpr t = d(j, l, k) + d(k, l, j) - d(j, k, l);
          if (!t.is_zero()) s += ginv(i, l) * t;
        }
        gamma.set(i, j, k, half * s);
      }
    }
  }
  return gamma;
}

RiemannUp riemann_up(const Christoffel& G) {
  const std::size_t n = G.dim();
  const Lifted lifted = lift(G.data());
  const std::vector<Polynomial> rho = riemann_numerators(lifted, n);
  const Polynomial den = lifted.den * lifted.den;
  RiemannUp r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          const Polynomial& v = rho[((i * n + j) * n + k) * n + l];
          if (!v.is_zero()) r.at(i, j, k, l) = RationalExpr(v, den);
        }
  return r;
}

RiemannDown lower_riemann(const RiemannUp& r, const Metric& g, LoweringOrder order) {
  const std::size_t n = r.dim();
  if (g.dim() != n) throw DimensionMismatch("metric and curvature dimensions differ");
  RiemannDown out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          RationalExpr s;
          for (std::size_t m = 0; m < n; ++m) {
            const RationalExpr& rc = order == LoweringOrder::Transposed ? r(m, j, l, k) : r(m, j, k, l);
            if (!g(i, m).is_zero() && !rc.is_zero()) s += g(i, m) * rc;
          }
          out.at(i, j, k, l) = std::move(s);
        }
  return out;
}

RiemannUp raise_riemann(const RiemannDown& r, const Metric& g, LoweringOrder order) {
  const std::size_t n = r.dim();
  if (g.dim() != n) throw DimensionMismatch("metric and curvature dimensions differ");
  const Metric ginv = inverse_metric(g);
  RiemannUp out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          RationalExpr s;
          for (std::size_t m = 0; m < n; ++m) {
            const RationalExpr& rc = order == LoweringOrder::Transposed ? r(m, j, l, k) : r(m, j, k, l);
            if (!ginv(i, m).is_zero() && !rc.is_zero()) s += ginv(i, m) * rc;
          }
          out.at(i, j, k, l) = std::move(s);
        }
  return out;
}

bool is_flat(const Christoffel& gamma) { return riemann_up(gamma).is_zero(); }

// ---- geodesic right-hand side ------------------------------------------------

namespace {

template <typename T>
std::vector<T> geodesic_rhs_impl(const Christoffel& G, const CurveState<T>& s) {
  const std::size_t n = G.dim();
  if (s.position.size() != n || s.velocity.size() != n)
    throw DimensionMismatch("state dimension differs from connection dimension");
  const T x = s.position[0];
  const T y = n > 1 ? s.position[1] : T(0);
  std::vector<T> acc(n, T(0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        const RationalExpr& g = G(a, b, c);
        if (g.is_zero()) continue;
        acc[a] -= g.eval(x, y) * s.velocity[b] * s.velocity[c];
      }
  return acc;
}

}  // namespace

std::vector<BigRational> geodesic_rhs(const Christoffel& gamma, const CurveState<BigRational>& state) {
  return geodesic_rhs_impl(gamma, state);
}

std::vector<double> geodesic_rhs(const Christoffel& gamma, const CurveState<double>& state) {
  return geodesic_rhs_impl(gamma, state);
}

// ---- identities --------------------------------------------------------------

Components metric_compatibility_residual(const Metric& g, const Christoffel& G) {
  const std::size_t n = g.dim();
  if (G.dim() != n) throw DimensionMismatch("metric and connection dimensions differ");
  Components out(n, 3);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        RationalExpr v = coord_diff(g(i, j), k);
        for (std::size_t l = 0; l < n; ++l) {
          if (!G(l, i, k).is_zero() && !g(l, j).is_zero()) v -= G(l, i, k) * g(l, j);
          if (!G(l, j, k).is_zero() && !g(i, l).is_zero()) v -= G(l, j, k) * g(i, l);
        }
        out.ref({i, j, k}) = std::move(v);
      }
  return out;
}

Components second_bianchi_residual(const Christoffel& G) {
  const std::size_t n = G.dim();
  // With Γ = γ/L and R = ρ/L^2 every covariant derivative is σ/L^3.
  const Lifted lifted = lift(G.data());
  const Polynomial& L = lifted.den;
  const std::vector<Polynomial> rho = riemann_numerators(lifted, n);
  auto g = [&](std::size_t i, std::size_t j, std::size_t k) -> const Polynomial& {
    return lifted.num[(i * n + j) * n + k];
  };
  auto r = [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) -> const Polynomial& {
    return rho[((i * n + j) * n + k) * n + l];
  };
  std::vector<Polynomial> dL(n);
  for (std::size_t m = 0; m < n; ++m) dL[m] = pdiff(L, m).scaled(BigRational(2));
  std::vector<Polynomial> sigma(n * n * n * n * n);
  auto nabla = [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l, std::size_t m) -> Polynomial& {
    return sigma[(((i * n + j) * n + k) * n + l) * n + m];
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
          for (std::size_t m = 0; m < n; ++m) {
            // d_m(ρ/L^2) = (ρ_m L - 2 ρ L_m) / L^3
            Polynomial v = pdiff(r(i, j, k, l), m) * L;
            add_product(v, r(i, j, k, l), dL[m], true);
            for (std::size_t p = 0; p < n; ++p) {
              add_product(v, g(i, p, m), r(p, j, k, l), false);
              add_product(v, g(p, j, m), r(i, p, k, l), true);
              add_product(v, g(p, k, m), r(i, j, p, l), true);
              add_product(v, g(p, l, m), r(i, j, k, p), true);
            }
            nabla(i, j, k, l, m) = std::move(v);
          }
  const Polynomial den = L * L * L;
  Components out(n, 5);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
          for (std::size_t m = 0; m < n; ++m) {
            Polynomial v = nabla(i, j, k, l, m) + nabla(i, j, l, m, k) + nabla(i, j, m, k, l);
            if (!v.is_zero()) out.ref({i, j, k, l, m}) = RationalExpr(std::move(v), den);
          }
  return out;
}

}  // namespace lincheck::tensor
