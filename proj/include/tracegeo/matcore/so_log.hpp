#pragma once

#include "tracegeo/core.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <vector>

namespace tracegeo {

/// Skew-symmetric logarithm of a special orthogonal matrix. The real Schur
/// form of O is block diagonal with planar rotations and +-1 entries; each
/// rotation maps to its angle in (-pi, pi], and the -1 entries are paired
/// into rotations by +pi.
template <typename Derived>
Mat<typename Derived::Scalar> so_log(const Eigen::MatrixBase<Derived>& o_in,
                                     typename Derived::Scalar tol = 1e-8) {
  using Scalar = typename Derived::Scalar;
  detail::require_square(o_in, "so_log");
  const Mat<Scalar> o = o_in.eval();
  const Eigen::Index n = o.rows();
  const Mat<Scalar> id = Mat<Scalar>::Identity(n, n);
  if ((o.transpose() * o - id).norm() > tol * std::sqrt(Scalar(n)) ||
      std::abs(o.determinant() - Scalar(1)) > tol) {
    throw GeometryError(ErrorCode::NotSpecialOrthogonal,
                        "so_log: matrix is not special orthogonal");
  }

  Eigen::RealSchur<Mat<Scalar>> schur(o);
  Mat<Scalar> q = schur.matrixU();
  Mat<Scalar> t = schur.matrixT();
  if (q.determinant() < Scalar(0)) {
    q.col(0) *= Scalar(-1);
    t.row(0) *= Scalar(-1);
    t.col(0) *= Scalar(-1);
  }

  const Scalar pi = std::numbers::pi_v<Scalar>;
  Mat<Scalar> l = Mat<Scalar>::Zero(n, n);
  std::vector<Eigen::Index> minus_one;
  for (Eigen::Index i = 0; i < n;) {
    const bool block = i + 1 < n && t(i + 1, i) != Scalar(0);
    if (block) {
      const Scalar c = Scalar(0.5) * (t(i, i) + t(i + 1, i + 1));
      const Scalar s = Scalar(0.5) * (t(i + 1, i) - t(i, i + 1));
      Scalar theta = std::atan2(s, c);
      if (theta <= -pi) theta = pi;
      l(i + 1, i) = theta;
      l(i, i + 1) = -theta;
      i += 2;
    } else {
      if (t(i, i) < Scalar(0)) minus_one.push_back(i);
      ++i;
    }
  }
  if (minus_one.size() % 2 != 0) {
    throw GeometryError(ErrorCode::NotSpecialOrthogonal,
                        "so_log: odd number of -1 eigenvalues");
  }
  for (std::size_t k = 0; k < minus_one.size(); k += 2) {
    const Eigen::Index i = minus_one[k];
    const Eigen::Index j = minus_one[k + 1];
    l(j, i) = pi;
    l(i, j) = -pi;
  }

  Mat<Scalar> out = q * l * q.transpose();
  return Scalar(0.5) * (out - out.transpose());
}

}  // namespace tracegeo
