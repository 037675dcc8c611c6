#include "lincheck/symbolic/rational_expr.hpp"

#include "lincheck/errors.hpp"

namespace lincheck::sym {

RationalExpr::RationalExpr(Polynomial num, Polynomial den) {
  if (den.is_zero()) throw DivisionByZero("rational function with zero denominator");
  if (num.is_zero()) {
    den_ = Polynomial(BigRational(1));
    return;
  }
  auto g = Polynomial::gcd_cofactors(num, den);
  if (g.gcd.is_constant()) {
    num_ = std::move(num);
    den_ = std::move(den);
  } else {
    num_ = std::move(g.a_cofactor);
    den_ = std::move(g.b_cofactor);
  }
  normalize_scalars();
}

void RationalExpr::normalize_scalars() {
  if (num_.is_zero()) {
    den_ = Polynomial(BigRational(1));
    return;
  }
  const BigRational cn = num_.content();
  const BigRational cd = den_.content();
  BigRational k = cn / cd;
  BigRational sn = BigRational(k.get_num()) / cn;
  BigRational sd = BigRational(k.get_den()) / cd;
  if (sgn(den_.leading().coeff) < 0) {
    sn = -sn;
    sd = -sd;
  }
  if (sn != 1) num_ = num_.scaled(sn);
  if (sd != 1) den_ = den_.scaled(sd);
}

BigRational RationalExpr::constant_value() const {
  return num_.constant_value() / den_.constant_value();
}

RationalExpr RationalExpr::operator-() const {
  RationalExpr r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalExpr operator+(const RationalExpr& a, const RationalExpr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) {
    if (a.den_.is_constant()) return RationalExpr(a.num_ + b.num_, a.den_, RationalExpr::Reduced{});
    return RationalExpr(a.num_ + b.num_, a.den_);
  }
  auto g = Polynomial::gcd_cofactors(a.den_, b.den_);
  if (g.gcd.is_constant()) {
    return RationalExpr(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_, RationalExpr::Reduced{});
  }
  // Henrici: with g = gcd(da, db) only factors of g can cancel.
  const Polynomial& da = g.a_cofactor;
  const Polynomial& db = g.b_cofactor;
  Polynomial n = a.num_ * db + b.num_ * da;
  if (n.is_zero()) return RationalExpr();
  auto h = Polynomial::gcd_cofactors(n, g.gcd);
  if (h.gcd.is_constant()) return RationalExpr(std::move(n), a.den_ * db, RationalExpr::Reduced{});
  return RationalExpr(std::move(h.a_cofactor), h.b_cofactor * da * db, RationalExpr::Reduced{});
}

RationalExpr operator-(const RationalExpr& a, const RationalExpr& b) { return a + (-b); }

RationalExpr operator*(const RationalExpr& a, const RationalExpr& b) {
  if (a.is_zero() || b.is_zero()) return RationalExpr();
  if (a.is_constant()) {
    if (a.constant_value() == 1) return b;
    return RationalExpr(b.num_.scaled(a.constant_value()), b.den_, RationalExpr::Reduced{});
  }
  if (b.is_constant()) {
    if (b.constant_value() == 1) return a;
    return RationalExpr(a.num_.scaled(b.constant_value()), a.den_, RationalExpr::Reduced{});
  }
  auto g1 = Polynomial::gcd_cofactors(a.num_, b.den_);
  auto g2 = Polynomial::gcd_cofactors(b.num_, a.den_);
  const bool c1 = g1.gcd.is_constant();
  const bool c2 = g2.gcd.is_constant();
  const Polynomial& n1 = c1 ? a.num_ : g1.a_cofactor;
  const Polynomial& d2 = c1 ? b.den_ : g1.b_cofactor;
  const Polynomial& n2 = c2 ? b.num_ : g2.a_cofactor;
  const Polynomial& d1 = c2 ? a.den_ : g2.b_cofactor;
  return RationalExpr(n1 * n2, d1 * d2, RationalExpr::Reduced{});
}

RationalExpr RationalExpr::inverse() const {
  if (is_zero()) throw DivisionByZero("division by the zero rational function");
  return RationalExpr(den_, num_, Reduced{});
}

RationalExpr operator/(const RationalExpr& a, const RationalExpr& b) { return a * b.inverse(); }

RationalExpr RationalExpr::pow(int n) const {
  if (n < 0) return inverse().pow(-n);
  return RationalExpr(num_.pow(static_cast<unsigned>(n)), den_.pow(static_cast<unsigned>(n)), Reduced{});
}

RationalExpr RationalExpr::diff(Var v) const {
  if (num_.is_constant() && den_.is_constant()) return RationalExpr();
  if (den_.is_constant()) return RationalExpr(num_.diff(v), den_, Reduced{});
  Polynomial n = num_.diff(v) * den_ - num_ * den_.diff(v);
  return RationalExpr(std::move(n), den_ * den_);
}

BigRational RationalExpr::eval(const BigRational& x, const BigRational& y) const {
  const BigRational d = den_.eval(x, y);
  if (sgn(d) == 0) throw DivisionByZero("pole of " + to_string());
  return num_.eval(x, y) / d;
}

double RationalExpr::eval(double x, double y) const {
  const double d = den_.eval(x, y);
  if (d == 0.0) throw EvalDomainError("pole", to_string());
  return num_.eval(x, y) / d;
}

std::string RationalExpr::to_string() const {
  if (den_.is_constant()) return num_.scaled(1 / den_.constant_value()).to_string();
  std::string n = num_.to_string();
  if (num_.size() > 1) n = "(" + n + ")";
  return n + "/(" + den_.to_string() + ")";
}

}  // namespace lincheck::sym
