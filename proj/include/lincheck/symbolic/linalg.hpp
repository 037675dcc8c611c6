#pragma once

#include <optional>
#include <vector>

#include "lincheck/symbolic/rational_expr.hpp"

namespace lincheck::sym {

template <typename T>
using Matrix = std::vector<std::vector<T>>;

/// Determinant over Q by Gaussian elimination.
BigRational determinant(Matrix<BigRational> m);

/// Fraction-free (Bareiss) determinant over Q[x, y].
Polynomial determinant(Matrix<Polynomial> m);

/// Determinant of a matrix of rational functions; rows are cleared of
/// denominators first so the elimination runs over polynomials.
RationalExpr determinant(const Matrix<RationalExpr>& m);

/// Unique solution of m z = rhs over the rational-function field, or nullopt
/// when det(m) is identically zero. Uses Cramer's rule on row-cleared
/// polynomial matrices.
std::optional<std::vector<RationalExpr>> solve_linear(const Matrix<RationalExpr>& m,
                                                      const std::vector<RationalExpr>& rhs);

/// Basis of the right nullspace of m over Q, from the reduced row echelon form.
std::vector<std::vector<BigRational>> nullspace(Matrix<BigRational> m);

}  // namespace lincheck::sym
