#pragma once

#include "tracegeo/core.hpp"
#include "tracegeo/metric.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace tracegeo {

// Curvature sign convention: R_{XY} Z = -nabla_X nabla_Y Z + nabla_Y nabla_X Z
// (for coordinate fields), so that R_{XY} Z = [[X, Y], Z] / 4 on left-invariant
// fields and R_{XYZW} = g(R_{XY} Z, W).

/// (R_{XY} Z)_K = -(Z [K^{-1}X, K^{-1}Y] - [X K^{-1}, Y K^{-1}] Z) / 4.
template <typename DK, typename DX, typename DY, typename DZ>
Mat<typename DK::Scalar> riemann_13(const Eigen::MatrixBase<DK>& k, const Eigen::MatrixBase<DX>& x,
                                    const Eigen::MatrixBase<DY>& y,
                                    const Eigen::MatrixBase<DZ>& z) {
  using Scalar = typename DK::Scalar;
  detail::require_square(k, "riemann_13");
  detail::require_same_order(k, x, "riemann_13");
  detail::require_same_order(k, y, "riemann_13");
  detail::require_same_order(k, z, "riemann_13");
  const Mat<Scalar> k_inv = checked_inverse(k, "riemann_13");
  const Mat<Scalar> lx = k_inv * x;
  const Mat<Scalar> ly = k_inv * y;
  const Mat<Scalar> rx = x * k_inv;
  const Mat<Scalar> ry = y * k_inv;
  return Scalar(-0.25) * (z * commutator(lx, ly) - commutator(rx, ry) * z);
}

/// R_{XYZW}(K) = tr([K^{-1}X, K^{-1}Y] [K^{-1}Z, K^{-1}W]) / 4.
template <typename DK, typename DX, typename DY, typename DZ, typename DW>
typename DK::Scalar riemann_04(const Eigen::MatrixBase<DK>& k, const Eigen::MatrixBase<DX>& x,
                               const Eigen::MatrixBase<DY>& y, const Eigen::MatrixBase<DZ>& z,
                               const Eigen::MatrixBase<DW>& w) {
  using Scalar = typename DK::Scalar;
  detail::require_square(k, "riemann_04");
  detail::require_same_order(k, x, "riemann_04");
  detail::require_same_order(k, y, "riemann_04");
  detail::require_same_order(k, z, "riemann_04");
  detail::require_same_order(k, w, "riemann_04");
  const Mat<Scalar> k_inv = checked_inverse(k, "riemann_04");
  const Mat<Scalar> first = commutator<Scalar>(k_inv * x, k_inv * y);
  const Mat<Scalar> second = commutator<Scalar>(k_inv * z, k_inv * w);
  return Scalar(0.25) * first.cwiseProduct(second.transpose()).sum();
}

/// Sectional curvature of the plane spanned by X and Y at K. Raises
/// LinearlyDependent for a degenerate spanning pair and DegenerateSection
/// when g_K restricted to the plane is (numerically) degenerate.
template <typename DK, typename DX, typename DY>
typename DK::Scalar sectional(const Eigen::MatrixBase<DK>& k, const Eigen::MatrixBase<DX>& x_in,
                              const Eigen::MatrixBase<DY>& y_in) {
  using Scalar = typename DK::Scalar;
  detail::require_square(k, "sectional");
  detail::require_same_order(k, x_in, "sectional");
  detail::require_same_order(k, y_in, "sectional");
  const Mat<Scalar> x = x_in.eval();
  const Mat<Scalar> y = y_in.eval();
  const Scalar xx = x.squaredNorm();
  const Scalar yy = y.squaredNorm();
  const Scalar xy = x.cwiseProduct(y).sum();
  if (xx * yy - xy * xy <= Scalar(1e-12) * xx * yy || xx == Scalar(0) || yy == Scalar(0)) {
    throw GeometryError(ErrorCode::LinearlyDependent, "sectional: X and Y are linearly dependent");
  }
  const Mat<Scalar> k_inv = checked_inverse(k, "sectional");
  const Scalar gxx = trace_metric_with_inverse<Scalar>(k_inv, x, x);
  const Scalar gyy = trace_metric_with_inverse<Scalar>(k_inv, y, y);
  const Scalar gxy = trace_metric_with_inverse<Scalar>(k_inv, x, y);
  const Scalar denom = gxx * gyy - gxy * gxy;
  const Scalar scale = (k_inv * x).squaredNorm() * (k_inv * y).squaredNorm();
  if (std::abs(denom) <= Scalar(1e-10) * scale) {
    throw GeometryError(ErrorCode::DegenerateSection, "sectional: degenerate 2-section");
  }
  const Mat<Scalar> c = commutator<Scalar>(k_inv * x, k_inv * y);
  return Scalar(0.25) * (c * c).trace() / denom;
}

/// Ric_K(X, Y) = tr(K^{-1}X) tr(K^{-1}Y) / 2 - n g_K(X, Y) / 2.
template <typename DK, typename DX, typename DY>
typename DK::Scalar ricci(const Eigen::MatrixBase<DK>& k, const Eigen::MatrixBase<DX>& x,
                          const Eigen::MatrixBase<DY>& y) {
  using Scalar = typename DK::Scalar;
  detail::require_square(k, "ricci");
  detail::require_same_order(k, x, "ricci");
  detail::require_same_order(k, y, "ricci");
  const Mat<Scalar> k_inv = checked_inverse(k, "ricci");
  const Mat<Scalar> lx = k_inv * x;
  const Mat<Scalar> ly = k_inv * y;
  const Scalar n = Scalar(k.rows());
  return Scalar(0.5) * lx.trace() * ly.trace() -
         Scalar(0.5) * n * lx.cwiseProduct(ly.transpose()).sum();
}

/// Trace of Z -> R_{XZ} Y over the coordinate basis, reading off the
/// coefficients with the inverse Gram matrix: V = sum g^{ab} g(V, E_b) E_a.
/// Independent of the closed Ricci formula.
template <typename DK, typename DX, typename DY>
typename DK::Scalar ricci_trace_oracle(const Eigen::MatrixBase<DK>& k_in,
                                       const Eigen::MatrixBase<DX>& x_in,
                                       const Eigen::MatrixBase<DY>& y_in) {
  using Scalar = typename DK::Scalar;
  detail::require_square(k_in, "ricci_trace_oracle");
  detail::require_same_order(k_in, x_in, "ricci_trace_oracle");
  detail::require_same_order(k_in, y_in, "ricci_trace_oracle");
  const Mat<Scalar> k = k_in.eval();
  const Mat<Scalar> x = x_in.eval();
  const Mat<Scalar> y = y_in.eval();
  const Eigen::Index n = k.rows();
  const Eigen::Index dim = n * n;
  const Mat<Scalar> k_inv = checked_inverse(k, "ricci_trace_oracle");
  const Mat<Scalar> gram_inv = checked_inverse(metric_gram(k), "ricci_trace_oracle");
  Scalar trace = 0;
  for (Eigen::Index alpha = 0; alpha < dim; ++alpha) {
    const Mat<Scalar> image = riemann_13(k, x, coordinate_basis<Scalar>(n, alpha), y);
    for (Eigen::Index beta = 0; beta < dim; ++beta) {
      trace += gram_inv(alpha, beta) *
               trace_metric_with_inverse<Scalar>(k_inv, image, coordinate_basis<Scalar>(n, beta));
    }
  }
  return trace;
}

enum class Causal { SpaceLike, TimeLike };

/// g_K-orthonormal frame: left translates by K of D_i = E_ii,
/// S_ij = (E_ij + E_ji)/sqrt 2 (space-like) and A_ij = (E_ij - E_ji)/sqrt 2
/// (time-like).
template <typename Scalar>
struct OrthonormalFrame {
  Mat<Scalar> base_point;
  std::vector<Mat<Scalar>> vectors;
  std::vector<Causal> causal;

  [[nodiscard]] Scalar sign(std::size_t a) const {
    return causal[a] == Causal::SpaceLike ? Scalar(1) : Scalar(-1);
  }
};

template <typename Derived>
OrthonormalFrame<typename Derived::Scalar> orthonormal_frame(const Eigen::MatrixBase<Derived>& k) {
  using Scalar = typename Derived::Scalar;
  detail::require_square(k, "orthonormal_frame");
  (void)checked_inverse(k, "orthonormal_frame");
  const Eigen::Index n = k.rows();
  const Scalar r = Scalar(1) / std::sqrt(Scalar(2));
  OrthonormalFrame<Scalar> frame;
  frame.base_point = k.eval();
  auto add = [&](Mat<Scalar> v, Causal c) {
    frame.vectors.push_back(frame.base_point * v);
    frame.causal.push_back(c);
  };
  for (Eigen::Index i = 0; i < n; ++i) add(unit_matrix<Scalar>(n, i, i), Causal::SpaceLike);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      add(r * (unit_matrix<Scalar>(n, i, j) + unit_matrix<Scalar>(n, j, i)), Causal::SpaceLike);
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      add(r * (unit_matrix<Scalar>(n, i, j) - unit_matrix<Scalar>(n, j, i)), Causal::TimeLike);
    }
  }
  return frame;
}

/// Scalar curvature as the frame trace sum_a eps_a Ric(e_a, e_a).
template <typename Derived>
typename Derived::Scalar scalar_curvature(const Eigen::MatrixBase<Derived>& k) {
  using Scalar = typename Derived::Scalar;
  const OrthonormalFrame<Scalar> frame = orthonormal_frame(k);
  Scalar s = 0;
  for (std::size_t a = 0; a < frame.vectors.size(); ++a) {
    s += frame.sign(a) * ricci(frame.base_point, frame.vectors[a], frame.vectors[a]);
  }
  return s;
}

/// -(n+1) n (n-1) / 2
inline double expected_scalar_curvature(int n) {
  return -0.5 * static_cast<double>((n + 1) * n * (n - 1));
}

/// Ricci against -(n/2) g for leaf-tangent X, Y (tr(K^{-1}X) = tr(K^{-1}Y) = 0).
template <typename DK, typename DX, typename DY>
std::pair<typename DK::Scalar, typename DK::Scalar> sl_einstein_check(
    const Eigen::MatrixBase<DK>& k, const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y) {
  using Scalar = typename DK::Scalar;
  detail::require_square(k, "sl_einstein_check");
  detail::require_same_order(k, x, "sl_einstein_check");
  detail::require_same_order(k, y, "sl_einstein_check");
  const Mat<Scalar> k_inv = checked_inverse(k, "sl_einstein_check");
  for (const Mat<Scalar>& v : {Mat<Scalar>(k_inv * x), Mat<Scalar>(k_inv * y)}) {
    if (std::abs(v.trace()) > Scalar(1e-10) * std::max(Scalar(1), v.norm())) {
      throw GeometryError(ErrorCode::NotTangent,
                          "sl_einstein_check: vector is not tangent to the leaf");
    }
  }
  const Scalar n = Scalar(k.rows());
  return {ricci(k, x, y), Scalar(-0.5) * n * trace_metric_with_inverse<Scalar>(k_inv, x, y)};
}

}  // namespace tracegeo
