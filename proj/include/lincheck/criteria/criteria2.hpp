#pragma once

#include <array>

#include "lincheck/symbolic/rational_expr.hpp"
#include "lincheck/tensor/tensor.hpp"

namespace lincheck::criteria {

using sym::RationalExpr;

/// Coefficients of the geodesic-type system
///   x'' = a x'^2 + 2b x'y' + c y'^2,
///   y'' = d x'^2 + 2e x'y' + f y'^2.
struct GeodesicCoeffs2 {
  RationalExpr a, b, c, d, e, f;

  friend bool operator==(const GeodesicCoeffs2&, const GeodesicCoeffs2&) = default;
};

/// x^a'' + gamma^a_bc x^b' x^c' + beta^a_b x^b' + alpha^a = 0, with gamma
/// given through the coefficients above.
struct QuadraticSystem2 {
  GeodesicCoeffs2 gamma;
  std::array<std::array<RationalExpr, 2>, 2> beta;
  std::array<RationalExpr, 2> alpha;
};

/// Γ^1_11 = -a, Γ^1_12 = -b, Γ^1_22 = -c, Γ^2_11 = -d, Γ^2_12 = -e, Γ^2_22 = -f.
tensor::Christoffel to_christoffel(const GeodesicCoeffs2& coeffs);

/// Inverse of to_christoffel for a 2D connection.
GeodesicCoeffs2 from_christoffel(const tensor::Christoffel& gamma);

/// Drops the zero linear and constant parts. Throws NonGeodesicType naming
/// each nonzero beta/alpha component otherwise.
GeodesicCoeffs2 from_quadratic_system(const QuadraticSystem2& sys);

/// Left-hand sides of the four flatness conditions:
///   a_y - b_x + be - cd
///   b_y - c_x + (ac - b^2) + (bf - ce)
///   d_y - e_x - (ae - bd) - (df - e^2)
///   (b + f)_x - (a + e)_y
std::array<RationalExpr, 4> flatness_residuals(const GeodesicCoeffs2& coeffs);

bool is_linearizable2(const GeodesicCoeffs2& coeffs);

}  // namespace lincheck::criteria
