#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lincheck/criteria/criteria2.hpp"
#include "lincheck/symbolic/linalg.hpp"

namespace lincheck::criteria {

using sym::BigRational;

/// Coefficients of the cubically semi-linear 2D system
///   x''' + P x'^3 + Q x'^2 y' + R x' y'^2 + S y'^3 = 0,
///   y''' + T x'^3 + U x'^2 y' + V x' y'^2 + W y'^3 = 0.
/// Each entry is the coefficient of its monomial, multiplicity included.
struct CubicCoeffs {
  RationalExpr P, Q, R, S, T, U, V, W;

  std::array<const RationalExpr*, 8> fields() const { return {&P, &Q, &R, &S, &T, &U, &V, &W}; }
  bool is_constant() const;
  friend bool operator==(const CubicCoeffs&, const CubicCoeffs&) = default;
};

/// A^a_bcd, fully symmetric in the lower indices.
class CubicTensor : public tensor::Components {
 public:
  explicit CubicTensor(std::size_t dim) : Components(dim, 4) {}
  const RationalExpr& operator()(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const {
    return get({a, b, c, d});
  }
  /// Sets every permutation of (b, c, d) at once.
  void set(std::size_t a, std::size_t b, std::size_t c, std::size_t d, const RationalExpr& v);
};

/// Symmetric components of a 2D tensor as monomial coefficients: Q = 3 A^1_112,
/// R = 3 A^1_122, U = 3 A^2_112, V = 3 A^2_122.
CubicCoeffs to_cubic_coeffs(const CubicTensor& a);
CubicTensor to_cubic_tensor(const CubicCoeffs& c);

enum class Verdict { Linearizable, LinearizableNumeric, NotLinearizable, Inconclusive };
enum class CheckPath { VariableCase, ConstantCase };

const char* to_string(Verdict v);
const char* to_string(CheckPath p);

struct FailedCondition {
  std::string name;
  std::string residual;
};

struct LinearizabilityReport {
  Verdict verdict = Verdict::Inconclusive;
  CheckPath path = CheckPath::VariableCase;
  std::optional<std::string> case_label;
  /// Recovered coefficient sets; each forward-builds exactly to the input.
  std::vector<GeodesicCoeffs2> branches;
  std::vector<FailedCondition> failed_conditions;
  std::vector<std::string> notes;
};

using ConstantMatrix6 = std::array<std::array<BigRational, 6>, 6>;

// ---- forward construction ----------------------------------------------------

/// The eight cubic coefficients of the system obtained by differentiating the
/// geodesic system and eliminating second derivatives.
CubicCoeffs build_cubic_2d(const GeodesicCoeffs2& g);

/// A^a_bcd = Γ^a_(bc,d) - 2 Γ^a_p(b Γ^p_cd), symmetrized by averaging over
/// the permutations of (b, c, d).
CubicTensor build_cubic_general(const tensor::Christoffel& gamma);

// ---- recovery -----------------------------------------------------------------

/// Linear coefficient matrix M(A) of the compatibility system M g = -D in the
/// unknowns g = (a, b, c, d, e, f).
sym::Matrix<RationalExpr> compatibility_matrix(const CubicCoeffs& A);

/// D = (3P_y - Q_x, Q_y - R_x, R_y - 3S_x, 3T_y - U_x, U_y - V_x, V_y - 3W_x).
std::vector<RationalExpr> derivative_vector(const CubicCoeffs& A);

/// Closed-form determinant Δ, equal to -det M(A) / 8.
RationalExpr delta(const CubicCoeffs& A);

/// Solves M g = -D over the rational-function field. Throws
/// DeltaIdenticallyZero when M is singular, and for constant A, where D = 0
/// and only the trivial solution would come back.
GeodesicCoeffs2 recover_coeffs(const CubicCoeffs& A);

/// The same unknowns from the closed-form adjugate expressions divided by Δ.
/// Throws DeltaIdenticallyZero when Δ is identically zero.
GeodesicCoeffs2 recover_coeffs_closed_form(const CubicCoeffs& A);

struct CompatibilityResiduals {
  /// Actual derivative minus the split right-hand side, in the order
  /// a_x, a_y, b_x, b_y, c_x, c_y, d_x, d_y, e_x, e_y, f_x, f_y.
  std::array<RationalExpr, 12> splits;
  /// Left minus right side of the six equations M g + D = 0.
  std::array<RationalExpr, 6> system;
};

extern const std::array<const char*, 12> kSplitNames;

CompatibilityResiduals compatibility_residuals(const CubicCoeffs& A, const GeodesicCoeffs2& g);

// ---- decisions ----------------------------------------------------------------

/// Variable coefficients: recover, then require every split residual, every
/// flatness residual and the forward build to match.
LinearizabilityReport check_variable(const CubicCoeffs& A);

/// Throws NotConstant unless all eight entries are constants.
ConstantMatrix6 constant_matrix(const CubicCoeffs& A);
BigRational constant_determinant(const CubicCoeffs& A);

/// Constant coefficients: case analysis on (b, c, d, e) with every sign branch
/// validated by an exact forward build. Throws NotConstant.
LinearizabilityReport classify_constant(const CubicCoeffs& A);

/// Dispatch: constants, then Δ not identically zero, else Inconclusive.
LinearizabilityReport check(const CubicCoeffs& A);

}  // namespace lincheck::criteria
