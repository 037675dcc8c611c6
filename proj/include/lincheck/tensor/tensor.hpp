#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "lincheck/symbolic/linalg.hpp"
#include "lincheck/symbolic/rational_expr.hpp"

namespace lincheck::tensor {

using sym::BigRational;
using sym::RationalExpr;

/// Partial derivative with respect to coordinate l. Components depend on x and
/// y only, so derivatives along coordinates l >= 2 vanish.
RationalExpr coord_diff(const RationalExpr& f, std::size_t l);

/// Dense array of rational functions with `rank` indices of size `dim`.
class Components {
 public:
  Components(std::size_t dim, std::size_t rank);

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rank_; }
  const std::vector<RationalExpr>& data() const { return data_; }
  bool is_zero() const;
  /// Component by index tuple, row-major.
  const RationalExpr& get(std::initializer_list<std::size_t> idx) const { return data_[index(idx)]; }
  RationalExpr& ref(std::initializer_list<std::size_t> idx) { return data_[index(idx)]; }

 private:
  std::size_t index(std::initializer_list<std::size_t> idx) const;

  std::size_t dim_;
  std::size_t rank_;
  std::vector<RationalExpr> data_;
};

/// Symmetric metric g_ij whose determinant is not identically zero.
class Metric : public Components {
 public:
  /// Throws InvalidMetric for non-square or non-symmetric input and
  /// SingularMetric when det g is identically zero.
  explicit Metric(const sym::Matrix<RationalExpr>& g);

  static Metric identity(std::size_t n);
  static Metric diagonal(const std::vector<RationalExpr>& entries);

  const RationalExpr& operator()(std::size_t i, std::size_t j) const { return get({i, j}); }
  const RationalExpr& determinant() const { return det_; }
  sym::Matrix<RationalExpr> matrix() const;

 private:
  RationalExpr det_;
};

/// Connection coefficients Γ^i_jk (upper i), symmetric in j and k.
class Christoffel : public Components {
 public:
  explicit Christoffel(std::size_t dim) : Components(dim, 3) {}

  const RationalExpr& operator()(std::size_t i, std::size_t j, std::size_t k) const { return get({i, j, k}); }
  /// Sets Γ^i_jk and Γ^i_kj together.
  void set(std::size_t i, std::size_t j, std::size_t k, const RationalExpr& v);
};

/// Curvature R^i_jkl.
class RiemannUp : public Components {
 public:
  explicit RiemannUp(std::size_t dim) : Components(dim, 4) {}
  const RationalExpr& operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    return get({i, j, k, l});
  }
  RationalExpr& at(std::size_t i, std::size_t j, std::size_t k, std::size_t l) { return ref({i, j, k, l}); }
};

/// Curvature with all indices lowered, R_ijkl.
class RiemannDown : public Components {
 public:
  explicit RiemannDown(std::size_t dim) : Components(dim, 4) {}
  const RationalExpr& operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    return get({i, j, k, l});
  }
  RationalExpr& at(std::size_t i, std::size_t j, std::size_t k, std::size_t l) { return ref({i, j, k, l}); }
};

/// Index placement used when lowering: Transposed is R_ijkl = g_im R^m_jlk,
/// Standard is R_ijkl = g_im R^m_jkl.
enum class LoweringOrder { Transposed, Standard };

Metric inverse_metric(const Metric& g);

/// Γ^i_jk = 1/2 g^il (g_jl,k + g_kl,j - g_jk,l).
Christoffel christoffel_from_metric(const Metric& g);

/// R^i_jkl = Γ^i_jl,k - Γ^i_jk,l + Γ^i_mk Γ^m_jl - Γ^i_ml Γ^m_jk.
RiemannUp riemann_up(const Christoffel& gamma);

RiemannDown lower_riemann(const RiemannUp& r, const Metric& g, LoweringOrder order = LoweringOrder::Transposed);
/// Inverse of lower_riemann for the same order.
RiemannUp raise_riemann(const RiemannDown& r, const Metric& g, LoweringOrder order = LoweringOrder::Transposed);

bool is_flat(const Christoffel& gamma);

/// Position and first derivatives of a curve.
template <typename T>
struct CurveState {
  std::vector<T> position;
  std::vector<T> velocity;
};

/// x^a'' = -Γ^a_bc x^b' x^c' at a rational point. Throws DivisionByZero at a pole.
std::vector<BigRational> geodesic_rhs(const Christoffel& gamma, const CurveState<BigRational>& state);
/// Floating-point version. Throws EvalDomainError at a pole.
std::vector<double> geodesic_rhs(const Christoffel& gamma, const CurveState<double>& state);

/// g_ij,k - Γ^l_ik g_lj - Γ^l_jk g_il as an n^3 array indexed (i, j, k).
Components metric_compatibility_residual(const Metric& g, const Christoffel& gamma);

/// R^i_jkl;m + R^i_jlm;k + R^i_jmk;l as an n^5 array indexed (i, j, k, l, m).
Components second_bianchi_residual(const Christoffel& gamma);

}  // namespace lincheck::tensor
