#pragma once

#include "tracegeo/core.hpp"

#include <Eigen/SVD>

namespace tracegeo {

enum class PolarSide {
  Left,   ///< A = O * P
  Right,  ///< A = P * O
};

template <typename Scalar>
struct PolarFactors {
  Mat<Scalar> orthogonal;
  Mat<Scalar> positive;
  PolarSide side = PolarSide::Left;

  [[nodiscard]] Mat<Scalar> product() const {
    return side == PolarSide::Left ? Mat<Scalar>(orthogonal * positive)
                                   : Mat<Scalar>(positive * orthogonal);
  }
};

/// Polar decomposition through the SVD A = U S V^T: the orthogonal factor is
/// U V^T, the positive factor V S V^T (left) or U S U^T (right).
template <typename Derived>
PolarFactors<typename Derived::Scalar> polar_decompose(const Eigen::MatrixBase<Derived>& a_in,
                                                       PolarSide side = PolarSide::Left) {
  using Scalar = typename Derived::Scalar;
  detail::require_square(a_in, "polar_decompose");
  const Mat<Scalar> a = a_in.eval();
  Eigen::JacobiSVD<Mat<Scalar>> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  if (!(s(s.size() - 1) > Scalar(64) * Eigen::NumTraits<Scalar>::epsilon() * s(0))) {
    throw GeometryError(ErrorCode::Singular, "polar_decompose: matrix is singular");
  }
  const Mat<Scalar>& u = svd.matrixU();
  const Mat<Scalar>& v = svd.matrixV();

  PolarFactors<Scalar> f;
  f.side = side;
  f.orthogonal = u * v.transpose();
  const Mat<Scalar>& basis = side == PolarSide::Left ? v : u;
  f.positive = basis * s.asDiagonal() * basis.transpose();
  f.positive = (Scalar(0.5) * (f.positive + f.positive.transpose())).eval();
  return f;
}

}  // namespace tracegeo
