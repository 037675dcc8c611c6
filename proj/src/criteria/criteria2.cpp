#include "lincheck/criteria/criteria2.hpp"

#include <string>
#include <vector>

#include "lincheck/errors.hpp"

namespace lincheck::criteria {

using sym::Var;

tensor::Christoffel to_christoffel(const GeodesicCoeffs2& c) {
  tensor::Christoffel g(2);
  g.set(0, 0, 0, -c.a);
  g.set(0, 0, 1, -c.b);
  g.set(0, 1, 1, -c.c);
  g.set(1, 0, 0, -c.d);
  g.set(1, 0, 1, -c.e);
  g.set(1, 1, 1, -c.f);
  return g;
}

GeodesicCoeffs2 from_christoffel(const tensor::Christoffel& g) {
  if (g.dim() != 2) throw DimensionMismatch("geodesic coefficients need a 2D connection");
  return {-g(0, 0, 0), -g(0, 0, 1), -g(0, 1, 1), -g(1, 0, 0), -g(1, 0, 1), -g(1, 1, 1)};
}

GeodesicCoeffs2 from_quadratic_system(const QuadraticSystem2& sys) {
  std::vector<std::string> nonzero;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      if (!sys.beta[a][b].is_zero()) nonzero.push_back("beta^" + std::to_string(a + 1) + "_" + std::to_string(b + 1));
  for (std::size_t a = 0; a < 2; ++a)
    if (!sys.alpha[a].is_zero()) nonzero.push_back("alpha^" + std::to_string(a + 1));
  if (!nonzero.empty()) throw NonGeodesicType(std::move(nonzero));
  return sys.gamma;
}

std::array<RationalExpr, 4> flatness_residuals(const GeodesicCoeffs2& k) {
  const auto& [a, b, c, d, e, f] = k;
  return {
      a.diff(Var::Y) - b.diff(Var::X) + b * e - c * d,
      b.diff(Var::Y) - c.diff(Var::X) + (a * c - b * b) + (b * f - c * e),
      d.diff(Var::Y) - e.diff(Var::X) - (a * e - b * d) - (d * f - e * e),
      (b + f).diff(Var::X) - (a + e).diff(Var::Y),
  };
}

bool is_linearizable2(const GeodesicCoeffs2& coeffs) {
  for (const auto& r : flatness_residuals(coeffs))
    if (!r.is_zero()) return false;
  return true;
}

}  // namespace lincheck::criteria
