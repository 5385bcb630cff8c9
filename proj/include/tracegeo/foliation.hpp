#pragma once

#include "tracegeo/core.hpp"

#include <cmath>
#include <utility>

namespace tracegeo {

/// g_K-orthogonal projection of W onto T_K SL_n(det K) = {W : tr(K^{-1} W) = 0}.
template <typename DK, typename DW>
Mat<typename DK::Scalar> sl_tangent_project(const Eigen::MatrixBase<DK>& k,
                                            const Eigen::MatrixBase<DW>& w) {
  using Scalar = typename DK::Scalar;
  detail::require_square(k, "sl_tangent_project");
  detail::require_same_order(k, w, "sl_tangent_project");
  const Mat<Scalar> k_inv = checked_inverse(k, "sl_tangent_project");
  const Scalar coeff = (k_inv * w).trace() / Scalar(k.rows());
  return w - coeff * k;
}

/// Leaf label c = det(Q) of the foliation by SL_n(c).
template <typename Derived>
typename Derived::Scalar leaf_of(const Eigen::MatrixBase<Derived>& q) {
  detail::require_square(q, "leaf_of");
  (void)checked_inverse(q, "leaf_of");
  return q.determinant();
}

/// Base point P0 = |c|^{1/n} diag(sign c, 1, ..., 1) of the leaf SL_n(c); left
/// translation by P0 carries SL_n isometrically onto the leaf.
template <typename Scalar>
Mat<Scalar> leaf_base_point(Scalar c, Eigen::Index n) {
  if (c == Scalar(0) || !std::isfinite(c)) {
    throw GeometryError(ErrorCode::Singular, "leaf_base_point: leaf label must be nonzero");
  }
  Mat<Scalar> p0 = std::pow(std::abs(c), Scalar(1) / Scalar(n)) * Mat<Scalar>::Identity(n, n);
  if (c < Scalar(0)) p0(0, 0) = -p0(0, 0);
  return p0;
}

/// Image of Q in SL_n under the leaf isometry L_{P0^{-1}}.
template <typename Derived>
Mat<typename Derived::Scalar> to_unit_leaf(const Eigen::MatrixBase<Derived>& q) {
  using Scalar = typename Derived::Scalar;
  const Scalar c = leaf_of(q);
  return checked_inverse(leaf_base_point(c, q.rows())) * q;
}

/// A point of SL_n x R.
template <typename Scalar>
class ProductPoint {
 public:
  ProductPoint(Mat<Scalar> sl_part, Scalar line_part)
      : sl_part_(std::move(sl_part)), line_part_(line_part) {
    detail::require_square(sl_part_, "ProductPoint");
    if (!std::isfinite(line_part_) ||
        std::abs(sl_part_.determinant() - Scalar(1)) > Scalar(1e-10)) {
      throw GeometryError(ErrorCode::NotUnimodular, "ProductPoint: det(P) must be 1");
    }
  }

  [[nodiscard]] const Mat<Scalar>& sl_part() const { return sl_part_; }
  [[nodiscard]] Scalar line_part() const { return line_part_; }

 private:
  Mat<Scalar> sl_part_;
  Scalar line_part_;
};

/// F(P, x) = e^{x / sqrt(n)} P, an isometry SL_n x R -> GL_n^+.
template <typename Scalar>
Mat<Scalar> product_forward(const ProductPoint<Scalar>& p) {
  const Scalar n = Scalar(p.sl_part().rows());
  return std::exp(p.line_part() / std::sqrt(n)) * p.sl_part();
}

/// F^{-1}(Q) = (Q / det(Q)^{1/n}, log(det Q) / sqrt(n)).
template <typename Derived>
ProductPoint<typename Derived::Scalar> product_inverse(const Eigen::MatrixBase<Derived>& q) {
  using Scalar = typename Derived::Scalar;
  detail::require_square(q, "product_inverse");
  const Scalar det = q.determinant();
  if (!(det > Scalar(0))) {
    throw GeometryError(ErrorCode::NonPositiveDeterminant,
                        "product_inverse: det(Q) must be positive");
  }
  const Scalar n = Scalar(q.rows());
  return ProductPoint<Scalar>(q / std::pow(det, Scalar(1) / n), std::log(det) / std::sqrt(n));
}

/// (DF)_{(P,x)}(M, a) = e^{x/sqrt(n)} M + e^{x/sqrt(n)} a P / sqrt(n).
template <typename Scalar, typename DM>
Mat<Scalar> product_pushforward(const ProductPoint<Scalar>& p, const Eigen::MatrixBase<DM>& m,
                                Scalar a) {
  detail::require_same_order(p.sl_part(), m, "product_pushforward");
  const Scalar root_n = std::sqrt(Scalar(p.sl_part().rows()));
  const Scalar scale = std::exp(p.line_part() / root_n);
  return scale * m + (scale * a / root_n) * p.sl_part();
}

}  // namespace tracegeo
