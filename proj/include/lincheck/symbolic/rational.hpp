#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace lincheck::sym {

/// Exact rational number. GMP keeps it canonical: gcd(|num|, den) = 1, den > 0.
using BigRational = mpq_class;
using BigInteger = mpz_class;

/// "p" or "p/q".
std::string to_string(const BigRational& q);

/// Parses "12", "-3/4" or a decimal such as "0.125" (converted exactly).
/// Returns nullopt on malformed input.
std::optional<BigRational> parse_rational(std::string_view text);

/// Exact square root when q is the square of a rational; nullopt otherwise
/// (including negative q).
std::optional<BigRational> exact_sqrt(const BigRational& q);

inline int sign(const BigRational& q) { return sgn(q); }

}  // namespace lincheck::sym
