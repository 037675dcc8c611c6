#include "lincheck/symbolic/polynomial.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <sstream>

#include "heugcd.hpp"
#include "lincheck/errors.hpp"

namespace lincheck::sym {

namespace {

std::atomic<std::size_t> g_term_cap{200000};

bool term_order(const Polynomial::Term& a, const Polynomial::Term& b) {
  return grlex_greater(a.mono, b.mono);
}

// ---- dense univariate helpers ----------------------------------------------
// Coefficients low to high, no trailing zeros. The zero polynomial is empty.

using UPoly = std::vector<BigRational>;

void trim(UPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

long udeg(const UPoly& p) { return static_cast<long>(p.size()) - 1; }

UPoly usub(const UPoly& a, const UPoly& b) {
  UPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

UPoly umul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

// Remainder of a by b over Q; quotient written to q when non-null.
UPoly urem(UPoly a, const UPoly& b, UPoly* q = nullptr) {
  const long db = udeg(b);
  if (q) q->assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, BigRational(0));
  const BigRational inv_lc = 1 / b.back();
  while (udeg(a) >= db && !a.empty()) {
    const long shift = udeg(a) - db;
    BigRational factor = a.back() * inv_lc;
    for (long i = 0; i <= db; ++i) a[shift + i] -= factor * b[i];
    if (q) (*q)[shift] = factor;
    trim(a);
  }
  return a;
}

void make_monic(UPoly& p) {
  if (p.empty()) return;
  const BigRational lc = p.back();
  for (auto& c : p) c /= lc;
}

UPoly ugcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = urem(std::move(a), b);
    a = std::move(b);
    b = std::move(r);
  }
  make_monic(a);
  return a;
}

UPoly uexact_div(const UPoly& a, const UPoly& b) {
  UPoly q;
  urem(a, b, &q);
  trim(q);
  return q;
}

BigRational ueval(const UPoly& p, const BigRational& v) {
  BigRational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * v + *it;
  return acc;
}

// ---- recursive representation Q[x][y] ---------------------------------------
// Index = power of y, entries are dense polynomials in x.

using RPoly = std::vector<UPoly>;

void rtrim(RPoly& p) {
  while (!p.empty() && p.back().empty()) p.pop_back();
}

RPoly to_recursive(const Polynomial& p) {
  RPoly r(p.degree(Var::Y) + 1);
  for (const auto& t : p.terms()) {
    UPoly& c = r[t.mono.y];
    if (c.size() <= t.mono.x) c.resize(t.mono.x + 1);
    c[t.mono.x] = t.coeff;
  }
  rtrim(r);
  return r;
}

Polynomial from_recursive(const RPoly& r) {
  std::vector<Polynomial::Term> terms;
  for (std::size_t j = 0; j < r.size(); ++j)
    for (std::size_t i = 0; i < r[j].size(); ++i)
      if (sgn(r[j][i]) != 0)
        terms.push_back({Monomial{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)},
                         r[j][i]});
  return Polynomial::from_terms(std::move(terms));
}

long rdeg(const RPoly& p) { return static_cast<long>(p.size()) - 1; }

UPoly rcontent(const RPoly& p) {
  UPoly g;
  for (const auto& c : p) {
    if (c.empty()) continue;
    g = g.empty() ? c : ugcd(g, c);
    if (g.size() == 1) break;
  }
  make_monic(g);
  return g;
}

RPoly rprimitive(const RPoly& p) {
  const UPoly c = rcontent(p);
  if (c.size() <= 1) {
    RPoly r = p;
    if (c.size() == 1)
      for (auto& k : r)
        for (auto& v : k) v /= c[0];
    return r;
  }
  RPoly r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    if (!p[i].empty()) r[i] = uexact_div(p[i], c);
  return r;
}

// Pseudo-remainder of a by b with respect to y.
RPoly rprem(RPoly a, const RPoly& b) {
  const long db = rdeg(b);
  const UPoly& lcb = b.back();
  while (!a.empty() && rdeg(a) >= db) {
    const long shift = rdeg(a) - db;
    const UPoly lca = a.back();
    for (auto& c : a) c = umul(c, lcb);
    for (long i = 0; i <= db; ++i) a[shift + i] = usub(a[shift + i], umul(lca, b[i]));
    rtrim(a);
  }
  return a;
}

// Image of p at x = x0 as a univariate polynomial in y.
UPoly image_at_x(const RPoly& p, const BigRational& x0) {
  UPoly r(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) r[j] = ueval(p[j], x0);
  trim(r);
  return r;
}

// True when the y-degree of gcd(a, b) is certainly zero, decided from a
// univariate image at a point where neither leading coefficient vanishes.
bool gcd_has_no_y(const RPoly& a, const RPoly& b) {
  static const long kPoints[] = {3, -2, 5, 7, -11, 13, 17, -19, 23, 29};
  for (long p : kPoints) {
    BigRational x0(p);
    if (sgn(ueval(a.back(), x0)) == 0 || sgn(ueval(b.back(), x0)) == 0) continue;
    return udeg(ugcd(image_at_x(a, x0), image_at_x(b, x0))) == 0;
  }
  return false;
}

Polynomial swap_vars(const Polynomial& p) {
  std::vector<Polynomial::Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) terms.push_back({Monomial{t.mono.y, t.mono.x}, t.coeff});
  return Polynomial::from_terms(std::move(terms));
}

// Scalar s with p / s primitive over Z and positive leading coefficient.
BigRational normalizer(const Polynomial& p) {
  const BigRational c = p.content();
  return sgn(p.leading().coeff) < 0 ? BigRational(-c) : c;
}

Polynomial normalize_primitive(const Polynomial& p) {
  if (p.is_zero()) return p;
  return p.scaled(1 / normalizer(p));
}

Polynomial divide_monomial(const Polynomial& p, Monomial m) {
  std::vector<Polynomial::Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) terms.push_back({Monomial{t.mono.x - m.x, t.mono.y - m.y}, t.coeff});
  return Polynomial::from_terms(std::move(terms));
}

detail::ZPoly2 to_integer_dense(const Polynomial& p) {
  const BigRational c = p.content();
  detail::ZPoly2 out(p.degree(Var::Y) + 1);
  for (const auto& t : p.terms()) {
    detail::ZPoly& row = out[t.mono.y];
    if (row.size() <= t.mono.x) row.resize(t.mono.x + 1);
    const BigRational v = t.coeff / c;
    row[t.mono.x] = v.get_num();
  }
  return out;
}

Polynomial from_integer_dense(const detail::ZPoly2& d) {
  std::vector<Polynomial::Term> terms;
  for (std::size_t j = 0; j < d.size(); ++j)
    for (std::size_t i = 0; i < d[j].size(); ++i)
      if (d[j][i] != 0)
        terms.push_back({Monomial{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)},
                         BigRational(d[j][i])});
  return Polynomial::from_terms(std::move(terms));
}

// gcd of nonzero polynomials without monomial content, y as main variable.
Polynomial gcd_recursive(const Polynomial& a, const Polynomial& b) {
  RPoly ra = to_recursive(a);
  RPoly rb = to_recursive(b);
  const UPoly c = ugcd(rcontent(ra), rcontent(rb));
  RPoly pa = rprimitive(ra);
  RPoly pb = rprimitive(rb);

  RPoly g{UPoly{BigRational(1)}};
  if (rdeg(pa) > 0 && rdeg(pb) > 0 && !gcd_has_no_y(pa, pb)) {
    if (rdeg(pa) < rdeg(pb)) std::swap(pa, pb);
    while (true) {
      RPoly r = rprem(pa, pb);
      if (r.empty()) {
        g = rprimitive(pb);
        break;
      }
      if (rdeg(r) == 0) break;
      pa = std::move(pb);
      pb = rprimitive(r);
    }
  }
  for (auto& k : g) k = umul(k, c);
  return from_recursive(g);
}

}  // namespace

std::size_t term_cap() { return g_term_cap.load(std::memory_order_relaxed); }
void set_term_cap(std::size_t cap) { g_term_cap.store(cap, std::memory_order_relaxed); }

Polynomial::Polynomial(const BigRational& c) {
  if (sgn(c) != 0) terms_.push_back({Monomial{}, c});
}

Polynomial Polynomial::variable(Var v) {
  return monomial(v == Var::X ? Monomial{1, 0} : Monomial{0, 1}, BigRational(1));
}

Polynomial Polynomial::monomial(Monomial m, const BigRational& c) {
  Polynomial p;
  if (sgn(c) != 0) p.terms_.push_back({m, c});
  return p;
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), term_order);
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && sgn(out.back().coeff) == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && sgn(out.back().coeff) == 0) out.pop_back();
  Polynomial p(std::move(out));
  p.check_cap();
  return p;
}

void Polynomial::check_cap() const {
  if (terms_.size() > term_cap()) throw ExpressionTooLarge(terms_.size(), term_cap());
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.degree() == 0);
}

BigRational Polynomial::constant_value() const {
  if (terms_.empty() || terms_.back().mono.degree() != 0) return 0;
  return terms_.back().coeff;
}

std::uint32_t Polynomial::degree(Var v) const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, v == Var::X ? t.mono.x : t.mono.y);
  return d;
}

std::uint32_t Polynomial::total_degree() const {
  return terms_.empty() ? 0 : terms_.front().mono.degree();
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

namespace {

std::vector<Polynomial::Term> merge(const std::vector<Polynomial::Term>& a,
                                    const std::vector<Polynomial::Term>& b, bool subtract) {
  std::vector<Polynomial::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && grlex_greater(a[i].mono, b[j].mono))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || grlex_greater(b[j].mono, a[i].mono)) {
      out.push_back({b[j].mono, subtract ? BigRational(-b[j].coeff) : b[j].coeff});
      ++j;
    } else {
      BigRational c = subtract ? BigRational(a[i].coeff - b[j].coeff) : BigRational(a[i].coeff + b[j].coeff);
      if (sgn(c) != 0) out.push_back({a[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge(terms_, o.terms_, false);
  check_cap();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge(terms_, o.terms_, true);
  check_cap();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  *this = *this * o;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.is_constant()) return b.scaled(a.constant_value());
  if (b.is_constant()) return a.scaled(b.constant_value());
  if (a.size() * b.size() > 64 * term_cap()) throw ExpressionTooLarge(a.size() * b.size(), term_cap());
  const std::size_t wx = a.degree(Var::X) + b.degree(Var::X) + 1;
  const std::size_t wy = a.degree(Var::Y) + b.degree(Var::Y) + 1;
  if (wx * wy <= 4 * a.size() * b.size() + 64) {
    // Dense integer accumulation; contents are multiplied back at the end.
    const BigRational ca = a.content();
    const BigRational cb = b.content();
    std::vector<mpz_class> acc(wx * wy);
    std::vector<std::pair<std::size_t, mpz_class>> bz;
    bz.reserve(b.size());
    for (const auto& t : b.terms()) bz.emplace_back(t.mono.y * wx + t.mono.x, BigRational(t.coeff / cb).get_num());
    for (const auto& s : a.terms()) {
      const mpz_class u = BigRational(s.coeff / ca).get_num();
      const std::size_t base = s.mono.y * wx + s.mono.x;
      for (const auto& [off, v] : bz) mpz_addmul(acc[base + off].get_mpz_t(), u.get_mpz_t(), v.get_mpz_t());
    }
    const BigRational c = ca * cb;
    std::vector<Polynomial::Term> terms;
    for (std::size_t d = wx + wy - 1; d-- > 0;) {
      // Descending grlex: total degree, then x power.
      for (std::size_t x = std::min(d, wx - 1) + 1; x-- > 0;) {
        const std::size_t y = d - x;
        if (y >= wy) break;
        mpz_class& v = acc[y * wx + x];
        if (v == 0) continue;
        terms.push_back({Monomial{static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y)}, BigRational(v) * c});
      }
    }
    Polynomial r(std::move(terms));
    r.check_cap();
    return r;
  }
  std::vector<Polynomial::Term> terms;
  terms.reserve(a.size() * b.size());
  for (const auto& s : a.terms())
    for (const auto& t : b.terms())
      terms.push_back({Monomial{s.mono.x + t.mono.x, s.mono.y + t.mono.y}, s.coeff * t.coeff});
  return Polynomial::from_terms(std::move(terms));
}

Polynomial Polynomial::scaled(const BigRational& c) const {
  if (sgn(c) == 0) return {};
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

Polynomial Polynomial::pow(unsigned n) const {
  Polynomial result(BigRational(1));
  Polynomial base = *this;
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  return true;
}

Polynomial Polynomial::diff(Var v) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    const std::uint32_t e = v == Var::X ? t.mono.x : t.mono.y;
    if (e == 0) continue;
    Monomial m = t.mono;
    (v == Var::X ? m.x : m.y) -= 1;
    out.push_back({m, t.coeff * e});
  }
  // Differentiation maps distinct monomials to distinct monomials and keeps
  // the relative grlex order, so the list is still sorted.
  return Polynomial(std::move(out));
}

BigRational Polynomial::eval(const BigRational& x, const BigRational& y) const {
  BigRational acc = 0;
  for (const auto& t : terms_) {
    BigRational v = t.coeff;
    for (std::uint32_t i = 0; i < t.mono.x; ++i) v *= x;
    for (std::uint32_t j = 0; j < t.mono.y; ++j) v *= y;
    acc += v;
  }
  return acc;
}

double Polynomial::eval(double x, double y) const {
  double acc = 0.0;
  for (const auto& t : terms_) {
    double v = t.coeff.get_d();
    for (std::uint32_t i = 0; i < t.mono.x; ++i) v *= x;
    for (std::uint32_t j = 0; j < t.mono.y; ++j) v *= y;
    acc += v;
  }
  return acc;
}

Polynomial Polynomial::substitute(Var v, const BigRational& value) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    const std::uint32_t e = v == Var::X ? t.mono.x : t.mono.y;
    BigRational c = t.coeff;
    for (std::uint32_t i = 0; i < e; ++i) c *= value;
    out.push_back({v == Var::X ? Monomial{0, t.mono.y} : Monomial{t.mono.x, 0}, c});
  }
  return from_terms(std::move(out));
}

BigRational Polynomial::content() const {
  if (terms_.empty()) return 1;
  BigInteger num = 0;
  BigInteger den = 1;
  for (const auto& t : terms_) {
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.coeff.get_num_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
  }
  BigRational c(num, den);
  c.canonicalize();
  return c;
}

Monomial Polynomial::min_exponents() const {
  if (terms_.empty()) return {};
  Monomial m{UINT32_MAX, UINT32_MAX};
  for (const auto& t : terms_) {
    m.x = std::min(m.x, t.mono.x);
    m.y = std::min(m.y, t.mono.y);
  }
  return m;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (a.is_zero()) return Polynomial{};
  if (b.is_constant()) return a.scaled(1 / b.constant_value());
  const std::size_t dense_size = (a.degree(Var::X) + 1) * (a.degree(Var::Y) + 1);
  if (b.size() > 1 && dense_size <= 16 * a.size() + 64) {
    // By Gauss's lemma a primitive integer divisor leaves an integer quotient.
    auto q = detail::exact_divide(to_integer_dense(a), to_integer_dense(b));
    if (!q) return std::nullopt;
    return from_integer_dense(*q).scaled(a.content() / b.content());
  }
  const Term& lb = b.leading();
  const BigRational inv = 1 / lb.coeff;
  std::vector<Term> quotient;
  Polynomial rem = a;
  while (!rem.is_zero()) {
    const Term& lr = rem.leading();
    if (lr.mono.x < lb.mono.x || lr.mono.y < lb.mono.y) return std::nullopt;
    Term q{Monomial{lr.mono.x - lb.mono.x, lr.mono.y - lb.mono.y}, lr.coeff * inv};
    std::vector<Term> prod;
    prod.reserve(b.size());
    for (const auto& t : b.terms_)
      prod.push_back({Monomial{t.mono.x + q.mono.x, t.mono.y + q.mono.y}, t.coeff * q.coeff});
    rem.terms_ = merge(rem.terms_, prod, true);
    quotient.push_back(std::move(q));
  }
  // Quotient terms were produced in strictly decreasing order.
  return Polynomial(std::move(quotient));
}

Polynomial Polynomial::quotient(const Polynomial& a, const Polynomial& b) {
  auto q = divide_exact(a, b);
  if (!q) throw Error("inexact polynomial division: (" + a.to_string() + ") / (" + b.to_string() + ")");
  return *std::move(q);
}

Polynomial Polynomial::gcd(const Polynomial& a, const Polynomial& b) { return gcd_cofactors(a, b).gcd; }

Polynomial Polynomial::lcm(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const GcdResult g = gcd_cofactors(a, b);
  const Polynomial l = g.a_cofactor * b;
  return l.scaled(1 / normalizer(l));
}

Polynomial::GcdResult Polynomial::gcd_cofactors(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() && b.is_zero()) return {Polynomial(), Polynomial(), Polynomial()};
  if (a.is_zero()) {
    const BigRational s = normalizer(b);
    return {b.scaled(1 / s), Polynomial(), Polynomial(s)};
  }
  if (b.is_zero()) {
    const BigRational s = normalizer(a);
    return {a.scaled(1 / s), Polynomial(s), Polynomial()};
  }
  const Monomial ma = a.min_exponents();
  const Monomial mb = b.min_exponents();
  const Monomial m{std::min(ma.x, mb.x), std::min(ma.y, mb.y)};
  const Polynomial mono = monomial(m, BigRational(1));
  auto monomial_only = [&]() -> GcdResult { return {mono, divide_monomial(a, m), divide_monomial(b, m)}; };
  if (a.is_constant() || b.is_constant() || a.size() == 1 || b.size() == 1) return monomial_only();

  Polynomial ra = divide_monomial(a, ma);
  Polynomial rb = divide_monomial(b, mb);
  if (ra.is_constant() || rb.is_constant()) return monomial_only();

  const BigRational ca = ra.content();
  const BigRational cb = rb.content();
  if (auto h = detail::heuristic_gcd(to_integer_dense(ra), to_integer_dense(rb))) {
    // a = x^ma * ca * H * A1 and g = x^m * H / s.
    const Polynomial hp = from_integer_dense(h->gcd);
    const BigRational s = normalizer(hp);
    const Monomial da{ma.x - m.x, ma.y - m.y};
    const Monomial db{mb.x - m.x, mb.y - m.y};
    Polynomial fa = from_integer_dense(h->a_over_gcd) * monomial(da, ca * s);
    Polynomial fb = from_integer_dense(h->b_over_gcd) * monomial(db, cb * s);
    return {hp.scaled(1 / s) * mono, std::move(fa), std::move(fb)};
  }

  // Recurse on the variable with the smaller degree as the main one.
  const bool swap = std::max(ra.degree(Var::Y), rb.degree(Var::Y)) >
                    std::max(ra.degree(Var::X), rb.degree(Var::X));
  Polynomial g = swap ? swap_vars(gcd_recursive(swap_vars(ra), swap_vars(rb))) : gcd_recursive(ra, rb);
  g = normalize_primitive(g * mono);
  return {g, quotient(a, g), quotient(b, g)};
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : terms_) {
    BigRational c = t.coeff;
    if (first) {
      if (sgn(c) < 0) {
        out << '-';
        c = -c;
      }
    } else {
      out << (sgn(c) < 0 ? " - " : " + ");
      if (sgn(c) < 0) c = -c;
    }
    std::string mono;
    if (t.mono.x > 0) mono += t.mono.x == 1 ? "x" : "x^" + std::to_string(t.mono.x);
    if (t.mono.y > 0) {
      if (!mono.empty()) mono += '*';
      mono += t.mono.y == 1 ? "y" : "y^" + std::to_string(t.mono.y);
    }
    // A leading "-x^2" would read as (-x)^2 under the grammar, so keep an
    // explicit unit coefficient when a power follows a leading minus.
    const bool leading_minus_power = first && t.coeff < 0 && mono.find('^') != std::string::npos &&
                                     mono.find('^') < mono.find('*');
    if (mono.empty()) {
      out << sym::to_string(c);
    } else if (c == 1 && !leading_minus_power) {
      out << mono;
    } else {
      out << sym::to_string(c) << '*' << mono;
    }
    first = false;
  }
  return out.str();
}

}  // namespace lincheck::sym
