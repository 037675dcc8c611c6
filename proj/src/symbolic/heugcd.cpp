#include "heugcd.hpp"

#include <algorithm>
#include <tuple>

namespace lincheck::sym::detail {

namespace {

constexpr int kAttempts = 6;

void trim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

void trim(ZPoly2& p) {
  while (!p.empty() && p.back().empty()) p.pop_back();
}

// ---- univariate ---------------------------------------------------------------

mpz_class eval(const ZPoly& f, const mpz_class& x) {
  mpz_class acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * x + *it;
  return acc;
}

mpz_class symmetric_mod(const mpz_class& v, const mpz_class& m, const mpz_class& half) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
  if (r > half) r -= m;
  return r;
}

ZPoly interpolate(mpz_class h, const mpz_class& x) {
  const mpz_class half = x / 2;
  ZPoly out;
  while (h != 0) {
    mpz_class c = symmetric_mod(h, x, half);
    out.push_back(c);
    h = (h - c) / x;
  }
  return out;
}

mpz_class content(const ZPoly& f) {
  mpz_class g = 0;
  for (const auto& c : f) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

mpz_class norm(const ZPoly& f) {
  mpz_class m = 0;
  for (const auto& c : f) m = std::max<mpz_class>(m, abs(c));
  return m;
}

const mpz_class& ground_lc(const ZPoly& f) { return f.back(); }

void divide_ground(ZPoly& f, const mpz_class& c) {
  for (auto& v : f) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), c.get_mpz_t());
}

ZPoly scale(ZPoly f, const mpz_class& c) {
  for (auto& v : f) v *= c;
  return f;
}

std::optional<ZPoly> divide(const ZPoly& f, const ZPoly& h) {
  if (h.empty()) return std::nullopt;
  if (f.size() < h.size()) {
    if (f.empty()) return ZPoly{};
    return std::nullopt;
  }
  ZPoly r = f;
  ZPoly q(f.size() - h.size() + 1);
  const mpz_class& lc = h.back();
  for (std::size_t k = q.size(); k-- > 0;) {
    const mpz_class& top = r[k + h.size() - 1];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lc.get_mpz_t())) return std::nullopt;
    mpz_class t;
    mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), lc.get_mpz_t());
    for (std::size_t i = 0; i < h.size(); ++i) r[k + i] -= t * h[i];
    q[k] = std::move(t);
  }
  for (const auto& c : r)
    if (c != 0) return std::nullopt;
  trim(q);
  return q;
}

mpz_class isqrt(const mpz_class& v) {
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  return r;
}

mpz_class initial_point(const mpz_class& fn, const mpz_class& gn, const mpz_class& flc, const mpz_class& glc) {
  const mpz_class b = 2 * std::min(fn, gn) + 29;
  const mpz_class lhs = std::min<mpz_class>(b, 99 * isqrt(b));
  const mpz_class rhs = 2 * std::min<mpz_class>(fn / abs(flc), gn / abs(glc)) + 2;
  return std::max(lhs, rhs);
}

mpz_class next_point(const mpz_class& x) { return 73794 * x * isqrt(isqrt(x)) / 27011; }

using Result1 = std::tuple<ZPoly, ZPoly, ZPoly>;

std::optional<Result1> heu1(ZPoly f, ZPoly g) {
  const mpz_class cf = content(f);
  const mpz_class cg = content(g);
  mpz_class gc;
  mpz_gcd(gc.get_mpz_t(), cf.get_mpz_t(), cg.get_mpz_t());
  divide_ground(f, gc);
  divide_ground(g, gc);
  // A constant side is its own content, so nothing beyond gc is shared.
  if (f.size() == 1 || g.size() == 1) return Result1{ZPoly{gc}, f, g};
  const mpz_class fn = norm(f);
  const mpz_class gn = norm(g);
  mpz_class x = initial_point(fn, gn, ground_lc(f), ground_lc(g));
  for (int attempt = 0; attempt < kAttempts; ++attempt, x = next_point(x)) {
    const mpz_class ff = eval(f, x);
    const mpz_class gg = eval(g, x);
    if (ff == 0 || gg == 0) continue;
    mpz_class hh;
    mpz_gcd(hh.get_mpz_t(), ff.get_mpz_t(), gg.get_mpz_t());
    ZPoly h = interpolate(hh, x);
    trim(h);
    if (!h.empty()) {
      divide_ground(h, content(h));
      if (auto qf = divide(f, h)) {
        if (auto qg = divide(g, h)) return Result1{scale(h, gc), *qf, *qg};
      }
    }
    ZPoly cff = interpolate(ff / hh, x);
    if (auto h2 = divide(f, cff)) {
      if (auto qg = divide(g, *h2)) return Result1{scale(*h2, gc), cff, *qg};
    }
    ZPoly cfg = interpolate(gg / hh, x);
    if (auto h3 = divide(g, cfg)) {
      if (auto qf = divide(f, *h3)) return Result1{scale(*h3, gc), *qf, cfg};
    }
  }
  return std::nullopt;
}

// ---- bivariate ----------------------------------------------------------------

ZPoly eval(const ZPoly2& f, const mpz_class& y) {
  ZPoly acc;
  for (auto it = f.rbegin(); it != f.rend(); ++it) {
    for (auto& c : acc) c *= y;
    if (acc.size() < it->size()) acc.resize(it->size());
    for (std::size_t i = 0; i < it->size(); ++i) acc[i] += (*it)[i];
  }
  trim(acc);
  return acc;
}

ZPoly2 interpolate(ZPoly h, const mpz_class& y) {
  const mpz_class half = y / 2;
  ZPoly2 out;
  while (!h.empty()) {
    ZPoly digit(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
      digit[i] = symmetric_mod(h[i], y, half);
      h[i] = (h[i] - digit[i]) / y;
    }
    trim(digit);
    trim(h);
    out.push_back(std::move(digit));
  }
  trim(out);
  return out;
}

mpz_class content(const ZPoly2& f) {
  mpz_class g = 0;
  for (const auto& p : f) {
    for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

mpz_class norm(const ZPoly2& f) {
  mpz_class m = 0;
  for (const auto& p : f) m = std::max(m, norm(p));
  return m;
}

const mpz_class& ground_lc(const ZPoly2& f) { return f.back().back(); }

void divide_ground(ZPoly2& f, const mpz_class& c) {
  for (auto& p : f) divide_ground(p, c);
}

ZPoly2 scale(ZPoly2 f, const mpz_class& c) {
  for (auto& p : f) p = scale(std::move(p), c);
  return f;
}

ZPoly sub_mul(ZPoly a, const ZPoly& t, const ZPoly& h) {
  if (a.size() < t.size() + h.size() - 1) a.resize(t.size() + h.size() - 1);
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] == 0) continue;
    for (std::size_t j = 0; j < h.size(); ++j) a[i + j] -= t[i] * h[j];
  }
  trim(a);
  return a;
}

std::optional<ZPoly2> divide(const ZPoly2& f, const ZPoly2& h) {
  if (h.empty()) return std::nullopt;
  if (f.size() < h.size()) {
    if (f.empty()) return ZPoly2{};
    return std::nullopt;
  }
  ZPoly2 r = f;
  ZPoly2 q(f.size() - h.size() + 1);
  const ZPoly& lc = h.back();
  for (std::size_t k = q.size(); k-- > 0;) {
    const ZPoly& top = r[k + h.size() - 1];
    if (top.empty()) continue;
    auto t = divide(top, lc);
    if (!t) return std::nullopt;
    for (std::size_t i = 0; i < h.size(); ++i) r[k + i] = sub_mul(std::move(r[k + i]), *t, h[i]);
    q[k] = std::move(*t);
  }
  for (const auto& c : r)
    if (!c.empty()) return std::nullopt;
  trim(q);
  return q;
}

}  // namespace

std::optional<ZPoly2> exact_divide(const ZPoly2& f, const ZPoly2& h) {
  ZPoly2 a = f;
  ZPoly2 b = h;
  trim(a);
  trim(b);
  return divide(a, b);
}

std::optional<GcdCofactors> heuristic_gcd(const ZPoly2& a, const ZPoly2& b) {
  ZPoly2 f = a;
  ZPoly2 g = b;
  trim(f);
  trim(g);
  if (f.empty() || g.empty()) return std::nullopt;
  if (f.size() == 1 && g.size() == 1) {
    auto r = heu1(f[0], g[0]);
    if (!r) return std::nullopt;
    auto& [h, cf, cg] = *r;
    return GcdCofactors{ZPoly2{h}, ZPoly2{cf}, ZPoly2{cg}};
  }
  const mpz_class cf = content(f);
  const mpz_class cg = content(g);
  mpz_class gc;
  mpz_gcd(gc.get_mpz_t(), cf.get_mpz_t(), cg.get_mpz_t());
  divide_ground(f, gc);
  divide_ground(g, gc);
  const mpz_class fn = norm(f);
  const mpz_class gn = norm(g);
  mpz_class y = initial_point(fn, gn, ground_lc(f), ground_lc(g));
  for (int attempt = 0; attempt < kAttempts; ++attempt, y = next_point(y)) {
    ZPoly ff = eval(f, y);
    ZPoly gg = eval(g, y);
    if (ff.empty() || gg.empty()) continue;
    auto r = heu1(ff, gg);
    if (!r) continue;
    auto& [hh, cff, cfg] = *r;
    ZPoly2 h = interpolate(hh, y);
    if (!h.empty()) {
      divide_ground(h, content(h));
      if (auto qf = divide(f, h)) {
        if (auto qg = divide(g, h)) return GcdCofactors{scale(h, gc), *qf, *qg};
      }
    }
    ZPoly2 cf2 = interpolate(cff, y);
    if (!cf2.empty()) {
      if (auto h2 = divide(f, cf2)) {
        if (auto qg = divide(g, *h2)) return GcdCofactors{scale(*h2, gc), cf2, *qg};
      }
    }
    ZPoly2 cg2 = interpolate(cfg, y);
    if (!cg2.empty()) {
      if (auto h3 = divide(g, cg2)) {
        if (auto qf = divide(f, *h3)) return GcdCofactors{scale(*h3, gc), *qf, cg2};
      }
    }
  }
  return std::nullopt;
}

}  // namespace lincheck::sym::detail
