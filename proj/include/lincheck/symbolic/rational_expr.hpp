#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "lincheck/symbolic/polynomial.hpp"

namespace lincheck::sym {

/// Canonical bivariate rational function num/den over the rationals.
///
/// The canonical form has coprime num and den, integer coefficients with no
/// common integer factor, and a positive graded-lex leading coefficient in
/// den. Zero is 0/1. Two values are equal exactly when their forms are.
class RationalExpr {
 public:
  RationalExpr() : den_(BigRational(1)) {}
  RationalExpr(const BigRational& c) : num_(c), den_(BigRational(1)) { normalize_scalars(); }  // NOLINT
  RationalExpr(long c) : RationalExpr(BigRational(c)) {}  // NOLINT
  RationalExpr(const Polynomial& p) : num_(p), den_(BigRational(1)) { normalize_scalars(); }  // NOLINT
  /// num/den reduced to canonical form. Throws DivisionByZero when den is 0.
  RationalExpr(Polynomial num, Polynomial den);

  static RationalExpr variable(Var v) { return RationalExpr(Polynomial::variable(v)); }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  /// Value of a constant expression; only meaningful when is_constant().
  BigRational constant_value() const;
  bool is_polynomial() const { return den_.is_constant(); }

  RationalExpr operator-() const;
  friend RationalExpr operator+(const RationalExpr& a, const RationalExpr& b);
  friend RationalExpr operator-(const RationalExpr& a, const RationalExpr& b);
  friend RationalExpr operator*(const RationalExpr& a, const RationalExpr& b);
  friend RationalExpr operator/(const RationalExpr& a, const RationalExpr& b);
  RationalExpr& operator+=(const RationalExpr& o) { return *this = *this + o; }
  RationalExpr& operator-=(const RationalExpr& o) { return *this = *this - o; }
  RationalExpr& operator*=(const RationalExpr& o) { return *this = *this * o; }
  RationalExpr& operator/=(const RationalExpr& o) { return *this = *this / o; }
  RationalExpr pow(int n) const;
  RationalExpr inverse() const;

  friend bool operator==(const RationalExpr& a, const RationalExpr& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  RationalExpr diff(Var v) const;

  /// Exact value at a rational point; throws DivisionByZero at a pole.
  BigRational eval(const BigRational& x, const BigRational& y) const;
  /// Floating-point value; throws EvalDomainError when den evaluates to 0.
  double eval(double x, double y) const;

  /// Parseable text, e.g. "-6/(x^2)" or "(x + y)/(x*y - 1)".
  std::string to_string() const;

 private:
  struct Reduced {};
  RationalExpr(Polynomial num, Polynomial den, Reduced) : num_(std::move(num)), den_(std::move(den)) {
    normalize_scalars();
  }
  void normalize_scalars();

  Polynomial num_;
  Polynomial den_;
};

/// Partial derivative shorthand matching the comma-subscript convention.
inline RationalExpr diff(const RationalExpr& f, Var v) { return f.diff(v); }
inline bool is_zero(const RationalExpr& f) { return f.is_zero(); }

inline std::ostream& operator<<(std::ostream& os, const RationalExpr& f) { return os << f.to_string(); }

}  // namespace lincheck::sym
