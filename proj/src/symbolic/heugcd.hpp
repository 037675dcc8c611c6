// Heuristic integer gcd for dense bivariate polynomials (Char, Geddes,
// Gonnet). Internal to the polynomial implementation.
#pragma once

#include <optional>
#include <vector>

#include <gmpxx.h>

namespace lincheck::sym::detail {

using ZPoly = std::vector<mpz_class>;  // coefficients low to high in x
using ZPoly2 = std::vector<ZPoly>;     // index = power of y

struct GcdCofactors {
  ZPoly2 gcd;
  ZPoly2 a_over_gcd;
  ZPoly2 b_over_gcd;
};

/// gcd(a, b) up to sign with both cofactors, or nullopt when the heuristic
/// gives up. Both inputs must be nonzero. Results are verified by exact
/// division.
std::optional<GcdCofactors> heuristic_gcd(const ZPoly2& a, const ZPoly2& b);

/// Exact quotient f / h in Z[x, y], nullopt when h does not divide f.
std::optional<ZPoly2> exact_divide(const ZPoly2& f, const ZPoly2& h);

}  // namespace lincheck::sym::detail
