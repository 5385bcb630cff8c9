#pragma once

#include "tracegeo/core.hpp"
#include "tracegeo/matcore/expm.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <utility>

namespace tracegeo {

/// The geodesic t -> K exp(tC) through K with velocity KC at t = 0.
template <typename Scalar>
class Geodesic {
 public:
  Geodesic(Mat<Scalar> base_point, Mat<Scalar> direction)
      : base_(std::move(base_point)), direction_(std::move(direction)) {
    detail::require_square(base_, "Geodesic");
    detail::require_same_order(base_, direction_, "Geodesic");
    if (!direction_.allFinite()) {
      throw GeometryError(ErrorCode::NonFinite, "Geodesic: non-finite direction");
    }
    (void)checked_inverse(base_, "Geodesic");
  }

  [[nodiscard]] const Mat<Scalar>& base_point() const { return base_; }
  [[nodiscard]] const Mat<Scalar>& direction() const { return direction_; }

  [[nodiscard]] Mat<Scalar> operator()(Scalar t) const {
    if (t == Scalar(0)) return base_;
    return base_ * expm(t * direction_);
  }

  /// Initial velocity K C.
  [[nodiscard]] Mat<Scalar> velocity() const { return base_ * direction_; }

 private:
  Mat<Scalar> base_;
  Mat<Scalar> direction_;
};

template <typename Scalar>
Mat<Scalar> geodesic_eval(const Geodesic<Scalar>& geo, Scalar t) {
  return geo(t);
}

/// The geodesic leaving K with velocity S: t -> K exp(t K^{-1} S).
template <typename DK, typename DS>
Geodesic<typename DK::Scalar> geodesic_from_velocity(const Eigen::MatrixBase<DK>& k,
                                                     const Eigen::MatrixBase<DS>& s) {
  using Scalar = typename DK::Scalar;
  detail::require_square(k, "geodesic_from_velocity");
  detail::require_same_order(k, s, "geodesic_from_velocity");
  Mat<Scalar> c = checked_inverse(k, "geodesic_from_velocity") * s;
  return Geodesic<Scalar>(k.eval(), std::move(c));
}

/// K^{1/2} exp(t K^{-1/2} S K^{-1/2}) K^{1/2} for SPD K and symmetric S.
template <typename DK, typename DS>
Mat<typename DK::Scalar> spd_geodesic(const Eigen::MatrixBase<DK>& k_in,
                                      const Eigen::MatrixBase<DS>& s_in,
                                      typename DK::Scalar t) {
  using Scalar = typename DK::Scalar;
  detail::require_square(k_in, "spd_geodesic");
  detail::require_same_order(k_in, s_in, "spd_geodesic");
  const Mat<Scalar> k = k_in.eval();
  const Mat<Scalar> s = s_in.eval();
  const Scalar sym_tol = Scalar(1e-12) * std::max(Scalar(1), k.norm());
  if ((k - k.transpose()).norm() > sym_tol) {
    throw GeometryError(ErrorCode::NotSPD, "spd_geodesic: base point is not symmetric");
  }
  if ((s - s.transpose()).norm() > Scalar(1e-12) * std::max(Scalar(1), s.norm())) {
    throw GeometryError(ErrorCode::NotSymmetric, "spd_geodesic: velocity is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Mat<Scalar>> es(k);
  const auto& ev = es.eigenvalues();
  if (!(ev(0) > Scalar(64) * Eigen::NumTraits<Scalar>::epsilon() * ev(ev.size() - 1))) {
    throw GeometryError(ErrorCode::NotSPD, "spd_geodesic: base point is not positive definite");
  }
  const Mat<Scalar>& q = es.eigenvectors();
  const Mat<Scalar> root = q * ev.cwiseSqrt().asDiagonal() * q.transpose();
  const Mat<Scalar> inv_root = q * ev.cwiseSqrt().cwiseInverse().asDiagonal() * q.transpose();
  Mat<Scalar> inner = inv_root * s * inv_root;
  inner = (Scalar(0.5) * (inner + inner.transpose())).eval();
  Mat<Scalar> out = root * expm(t * inner) * root;
  return Scalar(0.5) * (out + out.transpose());
}

/// Levi-Civita connection of the trace metric at P:
/// (nabla_X Y)_P = (X(Y))_P - (X_P P^{-1} Y_P + Y_P P^{-1} X_P) / 2,
/// where the Euclidean derivative X(Y) is supplied by the caller.
template <typename DP, typename DX, typename DY, typename DE>
Mat<typename DP::Scalar> nabla(const Eigen::MatrixBase<DP>& p, const Eigen::MatrixBase<DX>& xp,
                               const Eigen::MatrixBase<DY>& yp,
                               const Eigen::MatrixBase<DE>& euclidean_derivative) {
  using Scalar = typename DP::Scalar;
  detail::require_square(p, "nabla");
  detail::require_same_order(p, xp, "nabla");
  detail::require_same_order(p, yp, "nabla");
  detail::require_same_order(p, euclidean_derivative, "nabla");
  const Mat<Scalar> p_inv = checked_inverse(p, "nabla");
  return euclidean_derivative - Scalar(0.5) * (xp * p_inv * yp + yp * p_inv * xp);
}

/// ||P'' - P' P^{-1} P'||_F at t for the curve, derivatives by central
/// differences of step h.
template <typename Scalar, typename Curve>
Scalar curve_geodesic_residual(const Curve& curve, Scalar t, Scalar h) {
  if (!(h > Scalar(0))) {
    throw GeometryError(ErrorCode::InvalidArgument, "geodesic_residual: step must be positive");
  }
  const Mat<Scalar> ahead = curve(t + h);
  const Mat<Scalar> here = curve(t);
  const Mat<Scalar> behind = curve(t - h);
  const Mat<Scalar> velocity = (ahead - behind) / (Scalar(2) * h);
  const Mat<Scalar> acceleration = (ahead - Scalar(2) * here + behind) / (h * h);
  return (acceleration - velocity * checked_inverse(here) * velocity).norm();
}

template <typename Scalar>
Scalar geodesic_residual(const Geodesic<Scalar>& geo, Scalar t, Scalar h = Scalar(1e-4)) {
  return curve_geodesic_residual<Scalar>(geo, t, h);
}

}  // namespace tracegeo
