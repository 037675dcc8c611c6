#include "lincheck/symbolic/linalg.hpp"

#include "lincheck/errors.hpp"

namespace lincheck::sym {

namespace {

void check_square(std::size_t rows, std::size_t cols) {
  if (rows != cols) throw DimensionMismatch("determinant of a non-square matrix");
}

// Scales one row so every entry is a polynomial; returns the scale applied.
std::vector<Polynomial> clear_row(const std::vector<RationalExpr>& row, Polynomial& scale) {
  Polynomial l(1);
  for (const auto& e : row) {
    if (e.is_zero() || e.den() == l) continue;
    l = Polynomial::lcm(l, e.den());
  }
  std::vector<Polynomial> out;
  out.reserve(row.size());
  for (const auto& e : row) {
    if (e.is_zero()) {
      out.emplace_back();
    } else {
      out.push_back(e.num() * Polynomial::quotient(l, e.den()));
    }
  }
  scale = std::move(l);
  return out;
}

}  // namespace

BigRational determinant(Matrix<BigRational> m) {
  const std::size_t n = m.size();
  for (const auto& r : m) check_square(n, r.size());
  BigRational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && sgn(m[p][k]) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(m[p], m[k]);
      det = -det;
    }
    det *= m[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (sgn(m[i][k]) == 0) continue;
      const BigRational f = m[i][k] / m[k][k];
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return det;
}

Polynomial determinant(Matrix<Polynomial> m) {
  const std::size_t n = m.size();
  for (const auto& r : m) check_square(n, r.size());
  if (n == 0) return Polynomial(1);
  bool negate = false;
  Polynomial prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t p = k + 1;
      while (p < n && m[p][k].is_zero()) ++p;
      if (p == n) return Polynomial();
      std::swap(m[p], m[k]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Polynomial t = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        m[i][j] = prev.is_constant() ? t.scaled(1 / prev.constant_value()) : Polynomial::quotient(t, prev);
      }
      m[i][k] = Polynomial();
    }
    prev = m[k][k];
  }
  Polynomial det = m[n - 1][n - 1];
  return negate ? -det : det;
}

RationalExpr determinant(const Matrix<RationalExpr>& m) {
  Matrix<Polynomial> pm;
  pm.reserve(m.size());
  Polynomial scale(1);
  for (const auto& row : m) {
    Polynomial s;
    pm.push_back(clear_row(row, s));
    scale = scale * s;
  }
  return RationalExpr(determinant(std::move(pm)), scale);
}

std::optional<std::vector<RationalExpr>> solve_linear(const Matrix<RationalExpr>& m,
                                                      const std::vector<RationalExpr>& rhs) {
  const std::size_t n = m.size();
  if (rhs.size() != n) throw DimensionMismatch("right-hand side length differs from matrix size");
  // Clear each augmented row; the row scales cancel in Cramer's quotients.
  Matrix<Polynomial> a;
  std::vector<Polynomial> b;
  a.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    check_square(n, m[i].size());
    std::vector<RationalExpr> row = m[i];
    row.push_back(rhs[i]);
    Polynomial s;
    std::vector<Polynomial> cleared = clear_row(row, s);
    b.push_back(std::move(cleared.back()));
    cleared.pop_back();
    a.push_back(std::move(cleared));
  }
  const Polynomial det = determinant(a);
  if (det.is_zero()) return std::nullopt;
  std::vector<RationalExpr> z;
  z.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    Matrix<Polynomial> aj = a;
    for (std::size_t i = 0; i < n; ++i) aj[i][j] = b[i];
    z.emplace_back(determinant(std::move(aj)), det);
  }
  return z;
}

std::vector<std::vector<BigRational>> nullspace(Matrix<BigRational> m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(m[p][c]) == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    const BigRational inv = 1 / m[r][c];
    for (auto& v : m[r]) v *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(m[i][c]) == 0) continue;
      const BigRational f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<std::vector<BigRational>> basis;
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivot_cols) is_pivot[c] = true;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<BigRational> v(cols, BigRational(0));
    v[free] = 1;
    for (std::size_t k = 0; k < pivot_cols.size(); ++k) v[pivot_cols[k]] = -m[k][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace lincheck::sym
