#pragma once

#include "tracegeo/core.hpp"

namespace tracegeo {

/// Cartan-Killing form of gl_n: B(X, Y) = 2n tr(XY) - 2 tr(X) tr(Y).
template <typename DX, typename DY>
typename DX::Scalar cartan_killing(const Eigen::MatrixBase<DX>& x,
                                   const Eigen::MatrixBase<DY>& y) {
  using Scalar = typename DX::Scalar;
  detail::require_square(x, "cartan_killing");
  detail::require_same_order(x, y, "cartan_killing");
  const Scalar n = Scalar(x.rows());
  const Scalar tr_xy = (x.transpose().cwiseProduct(y)).sum();
  return Scalar(2) * n * tr_xy - Scalar(2) * x.trace() * y.trace();
}

}  // namespace tracegeo
