#pragma once

#include <cstdint>
#include <random>

#include "lincheck/symbolic/rational_expr.hpp"
#include "lincheck/tensor/tensor.hpp"

namespace lincheck::fixtures {

using sym::RationalExpr;

/// Integer in [lo, hi] drawn without std distributions so sequences are
/// identical across standard libraries.
inline long draw(std::mt19937_64& rng, long lo, long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<long>(rng() % span);
}

/// Dense polynomial of total degree <= degree with coefficients in [-c, c].
RationalExpr random_poly(std::mt19937_64& rng, int degree, long c = 2);

/// Symmetric polynomial metric of degree <= 2, nonsingular at (1, 1).
tensor::Metric random_metric(std::mt19937_64& rng, std::size_t n);

/// Polynomial map (u, v) of degree <= 2 with Jacobian nonzero at (1, 1).
struct PolyMap {
  RationalExpr u;
  RationalExpr v;
};
PolyMap random_map(std::mt19937_64& rng);

/// J^T J for the map, a flat metric wherever the Jacobian is invertible.
tensor::Metric pullback_metric(const PolyMap& m);

/// Γ^i_jk = (J^-1)^i_a d_j d_k phi^a for phi = (u, v): the connection whose
/// geodesics are straight lines in (u, v).
tensor::Christoffel flat_connection(const PolyMap& m);

}  // namespace lincheck::fixtures
