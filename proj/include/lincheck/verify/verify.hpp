#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lincheck/criteria/criteria2.hpp"
#include "lincheck/criteria/criteria3.hpp"
#include "lincheck/symbolic/expr_tree.hpp"
#include "lincheck/tensor/tensor.hpp"

namespace lincheck::verify {

using criteria::CubicCoeffs;
using criteria::GeodesicCoeffs2;
using sym::Bindings;
using sym::ExprTree;
using sym::RationalExpr;

/// Candidate linearizing change of variables u(x, y), v(x, y).
struct TransformPair {
  ExprTree u;
  ExprTree v;
};

/// (x, y, x', y') for order 2, (x, y, x', y', x'', y'') for order 3.
struct NumericState {
  int order = 2;
  std::vector<double> values;
  double s = 0.0;
};

struct Trajectory {
  std::vector<NumericState> samples;
  double step = 0.0;
  std::string coeff_source;
};

/// First fundamental form E, F, G.
struct Metric2Components {
  RationalExpr p, q, r;
};

struct IntegrationOptions {
  std::size_t max_steps = 1000000;
};

constexpr double kDefaultStep = 1e-3;
constexpr double kDefaultSEnd = 0.5;

/// RK4 for x'' = a x'^2 + 2b x'y' + c y'^2, y'' = d x'^2 + 2e x'y' + f y'^2
/// from init.s to s_end. Samples include the initial state. Integration stops
/// at the first non-finite state. Throws EvalDomainError at a coefficient pole,
/// StepLimitExceeded and InvalidArgument.
Trajectory integrate_second(const GeodesicCoeffs2& coeffs, const NumericState& init, double s_end, double step,
                            const IntegrationOptions& opts = {});

/// RK4 for x''' + P x'^3 + Q x'^2 y' + R x' y'^2 + S y'^3 = 0 and the
/// T..W equation, same conventions as integrate_second.
Trajectory integrate_third(const CubicCoeffs& A, const NumericState& init, double s_end, double step,
                           const IntegrationOptions& opts = {});

/// Appends (x'', y'') from the geodesic system to an order-2 state.
NumericState lift_to_third(const GeodesicCoeffs2& coeffs, const NumericState& state);

struct PushedSample {
  double s;
  double u;
  double v;
};

/// u, v evaluated at every sample position. Throws EvalDomainError.
std::vector<PushedSample> pushforward(const Trajectory& traj, const TransformPair& t, const Bindings& bindings = {});

/// Least-squares polynomial fit of the given degree in s; the largest
/// absolute deviation divided by 1 + max |value|. Throws InvalidArgument with
/// fewer than degree + 2 samples and DegenerateFit when all s coincide.
double linearity_residual(const std::vector<std::pair<double, double>>& samples, int degree);

/// Coefficients of x'^2, x'y', y'^2 in a quadratic form in the velocities.
struct VelocityQuadratic {
  RationalExpr xx, xy, yy;

  bool is_zero() const { return xx.is_zero() && xy.is_zero() && yy.is_zero(); }
  /// e.g. "(x)*y'^2"; "0" when zero.
  std::string to_string() const;
};

/// Second derivative of u and of v along solutions of the geodesic system:
/// u_xx x'^2 + 2u_xy x'y' + u_yy y'^2 + u_x x'' + u_y y''. Throws NotRational
/// for transcendental transforms.
std::array<VelocityQuadratic, 2> symbolic_linearization_residual(const GeodesicCoeffs2& coeffs, const TransformPair& t,
                                                                 const Bindings& bindings = {});

/// p = u_x^2 + v_x^2, q = u_x u_y + v_x v_y, r = u_y^2 + v_y^2. Function
/// calls are kept as atoms and sin(φ)^2 is rewritten to 1 - cos(φ)^2 for
/// identical φ; throws NotSimplifiable if any atom survives.
Metric2Components metric_from_transform(const TransformPair& t, const Bindings& bindings = {});

/// Floating-point (p, q, r) at a point, available for any transform.
std::array<double, 3> metric_numeric(const TransformPair& t, double x, double y, const Bindings& bindings = {});

tensor::Metric to_metric(const Metric2Components& m);

/// Deterministic initial states with |x - cx| <= 0.5, |y - cy| <= 0.5 and
/// |x'|, |y'| <= 0.3.
std::vector<NumericState> seeded_initial_states(std::uint64_t seed, std::size_t count, double cx = 1.0,
                                                double cy = 0.0);

}  // namespace lincheck::verify
