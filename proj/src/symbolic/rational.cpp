#include "lincheck/symbolic/rational.hpp"

#include <cctype>

namespace lincheck::sym {

std::string to_string(const BigRational& q) { return q.get_str(); }

std::optional<BigRational> parse_rational(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  auto digits = [&](std::string& out) {
    const std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])) != 0) out += text[i++];
    return i > start;
  };
  std::string whole;
  std::string frac;
  const bool has_whole = digits(whole);
  BigRational value;
  if (i < text.size() && text[i] == '.') {
    ++i;
    const bool has_frac = digits(frac);
    if (!has_whole && !has_frac) return std::nullopt;
    BigInteger num(whole + frac, 10);
    BigInteger den = 1;
    for (std::size_t k = 0; k < frac.size(); ++k) den *= 10;
    value = BigRational(num, den);
  } else if (i < text.size() && text[i] == '/') {
    if (!has_whole) return std::nullopt;
    ++i;
    std::string den;
    if (!digits(den)) return std::nullopt;
    BigInteger d(den, 10);
    if (d == 0) return std::nullopt;
    value = BigRational(BigInteger(whole, 10), d);
  } else {
    if (!has_whole) return std::nullopt;
    value = BigRational(BigInteger(whole, 10));
  }
  if (i != text.size()) return std::nullopt;
  value.canonicalize();
  return negative ? BigRational(-value) : value;
}

std::optional<BigRational> exact_sqrt(const BigRational& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (mpz_perfect_square_p(q.get_num_mpz_t()) == 0 || mpz_perfect_square_p(q.get_den_mpz_t()) == 0)
    return std::nullopt;
  BigInteger n;
  BigInteger d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  return BigRational(n, d);
}

}  // namespace lincheck::sym
