#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lincheck/symbolic/rational.hpp"

namespace lincheck::sym {

enum class Var : std::uint8_t { X = 0, Y = 1 };

inline const char* var_name(Var v) { return v == Var::X ? "x" : "y"; }

/// Exponent pair x^i y^j.
struct Monomial {
  std::uint32_t x = 0;
  std::uint32_t y = 0;

  std::uint32_t degree() const { return x + y; }
  friend bool operator==(Monomial, Monomial) = default;
};

/// Graded lexicographic order with x > y. Returns true when a sorts before b
/// in the descending term list (a is the "larger" monomial).
inline bool grlex_greater(Monomial a, Monomial b) {
  if (a.degree() != b.degree()) return a.degree() > b.degree();
  return a.x > b.x;
}

/// Global term-count cap applied to every polynomial result (default 200 000).
std::size_t term_cap();
void set_term_cap(std::size_t cap);

/// Sparse bivariate polynomial over the rationals.
///
/// Terms are kept sorted in descending graded-lex order with no zero
/// coefficients, so structural equality is value equality.
class Polynomial {
 public:
  struct Term {
    Monomial mono;
    BigRational coeff;
  };

  Polynomial() = default;
  Polynomial(const BigRational& c);  // NOLINT(google-explicit-constructor)
  Polynomial(long c) : Polynomial(BigRational(c)) {}  // NOLINT(google-explicit-constructor)

  static Polynomial variable(Var v);
  static Polynomial monomial(Monomial m, const BigRational& c);
  /// Builds from arbitrary (possibly repeated / zero) terms.
  static Polynomial from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term value; only meaningful when is_constant().
  BigRational constant_value() const;
  const Term& leading() const { return terms_.front(); }

  std::uint32_t degree(Var v) const;
  std::uint32_t total_degree() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial scaled(const BigRational& c) const;
  Polynomial pow(unsigned n) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

  Polynomial diff(Var v) const;

  BigRational eval(const BigRational& x, const BigRational& y) const;
  double eval(double x, double y) const;
  /// Substitutes a value for one variable.
  Polynomial substitute(Var v, const BigRational& value) const;

  /// Positive rational c such that p / c has coprime integer coefficients
  /// and the sign of the leading coefficient is kept.
  BigRational content() const;
  /// Smallest exponents over all terms (the monomial content).
  Monomial min_exponents() const;

  /// Exact quotient when b divides a, nullopt otherwise.
  static std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b);
  /// Like divide_exact but throws when the division is not exact.
  static Polynomial quotient(const Polynomial& a, const Polynomial& b);
  /// Greatest common divisor, normalized to integer primitive form with a
  /// positive leading coefficient. gcd(0, 0) = 0.
  static Polynomial gcd(const Polynomial& a, const Polynomial& b);

  /// gcd together with the cofactors a / gcd and b / gcd.
  struct GcdResult;
  static GcdResult gcd_cofactors(const Polynomial& a, const Polynomial& b);
  /// Least common multiple with positive primitive normalization.
  static Polynomial lcm(const Polynomial& a, const Polynomial& b);

  /// Parseable text form, e.g. "3*x^2*y - 1/2*y + 7".
  std::string to_string() const;

 private:
  explicit Polynomial(std::vector<Term> sorted) : terms_(std::move(sorted)) {}
  void check_cap() const;

  std::vector<Term> terms_;
};

struct Polynomial::GcdResult {
  Polynomial gcd;
  Polynomial a_cofactor;
  Polynomial b_cofactor;
};

}  // namespace lincheck::sym
