#pragma once

#include "tracegeo/core.hpp"
#include "tracegeo/matcore/expm.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <vector>

namespace tracegeo {

inline constexpr double kDefaultTolerance = 1e-8;

namespace detail {

/// Gauss-Legendre nodes and weights on [0, 1] (Golub-Welsch).
template <typename Scalar>
void gauss_legendre_unit(int m, std::vector<Scalar>& nodes, std::vector<Scalar>& weights) {
  Mat<Scalar> jacobi = Mat<Scalar>::Zero(m, m);
  for (int k = 1; k < m; ++k) {
    const Scalar beta = Scalar(k) / std::sqrt(Scalar(4 * k * k - 1));
    jacobi(k, k - 1) = beta;
    jacobi(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Mat<Scalar>> es(jacobi);
  nodes.resize(m);
  weights.resize(m);
  for (int i = 0; i < m; ++i) {
    nodes[i] = (es.eigenvalues()(i) + Scalar(1)) / Scalar(2);
    const Scalar v0 = es.eigenvectors()(0, i);
    weights[i] = v0 * v0;  // 2 v0^2 on [-1, 1], halved for [0, 1]
  }
}

/// Principal square root of an upper triangular matrix whose diagonal avoids
/// the closed negative real axis.
template <typename Scalar>
CMat<Scalar> sqrtm_triangular(const CMat<Scalar>& t) {
  using Complex = std::complex<Scalar>;
  const Eigen::Index n = t.rows();
  CMat<Scalar> r = CMat<Scalar>::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    r(j, j) = std::sqrt(t(j, j));
    for (Eigen::Index i = j - 1; i >= 0; --i) {
      Complex s = t(i, j);
      for (Eigen::Index k = i + 1; k < j; ++k) s -= r(i, k) * r(k, j);
      r(i, j) = s / (r(i, i) + r(j, j));
    }
  }
  return r;
}

template <typename Scalar>
Scalar spectrum_scale(const Mat<Scalar>& a) {
  return std::max(Scalar(1), a.norm());
}

/// True when lambda sits on the closed negative real axis for the given
/// tolerance.
template <typename Scalar>
bool on_negative_axis(std::complex<Scalar> lambda, Scalar tol) {
  return std::abs(lambda.imag()) <= tol * std::max(Scalar(1), std::abs(lambda)) &&
         lambda.real() < Scalar(0);
}

template <typename Scalar>
bool is_positive_real(std::complex<Scalar> lambda, Scalar tol) {
  return std::abs(lambda.imag()) <= tol * std::max(Scalar(1), std::abs(lambda)) &&
         lambda.real() > Scalar(0);
}

/// Complex Schur form followed by inverse scaling and squaring on the whole
/// triangular factor: square roots until ||T - I||_1 <= 0.25, then an 8-point
/// Gauss-Legendre (Pade-equivalent) evaluation of log(I + X).
template <typename Scalar>
Mat<Scalar> principal_log_unchecked(const Eigen::ComplexSchur<CMat<Scalar>>& schur) {
  using Complex = std::complex<Scalar>;
  const CMat<Scalar>& u = schur.matrixU();
  CMat<Scalar> t = schur.matrixT();
  const Eigen::Index n = t.rows();
  const CMat<Scalar> id = CMat<Scalar>::Identity(n, n);
  const Eigen::Matrix<Complex, Eigen::Dynamic, 1> diag0 = t.diagonal();

  constexpr double kTheta = 0.25;
  constexpr int kMaxRoots = 128;
  int roots = 0;
  while (roots < kMaxRoots &&
         (t - id).cwiseAbs().colwise().sum().maxCoeff() > Scalar(kTheta)) {
    t = sqrtm_triangular(t);
    ++roots;
  }

  std::vector<Scalar> nodes;
  std::vector<Scalar> weights;
  gauss_legendre_unit<Scalar>(8, nodes, weights);
  const CMat<Scalar> x = t - id;
  CMat<Scalar> l = CMat<Scalar>::Zero(n, n);
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const CMat<Scalar> denom = id + Complex(nodes[j]) * x;
    l += Complex(weights[j]) * denom.template triangularView<Eigen::Upper>().solve(x);
  }
  l *= Complex(std::ldexp(Scalar(1), roots));
  for (Eigen::Index i = 0; i < n; ++i) l(i, i) = std::log(diag0(i));
  l.template triangularView<Eigen::StrictlyLower>().setZero();

  return (u * l * u.adjoint()).real();
}

}  // namespace detail

/// Principal real logarithm: the unique real L with exp(L) = A whose
/// eigenvalues lie in the strip |Im| < pi. Fails with SpectrumOnCut when an
/// eigenvalue lies on the closed negative real axis (within tol), and with
/// Singular for a (numerically) zero eigenvalue.
template <typename Derived>
Mat<typename Derived::Scalar> real_log_principal(const Eigen::MatrixBase<Derived>& a_in,
                                                 typename Derived::Scalar tol = kDefaultTolerance) {
  using Scalar = typename Derived::Scalar;
  detail::require_square(a_in, "real_log_principal");
  const Mat<Scalar> a = a_in.eval();
  Eigen::ComplexSchur<CMat<Scalar>> schur(a.template cast<std::complex<Scalar>>());
  const Scalar scale = detail::spectrum_scale(a);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    const auto lambda = schur.matrixT()(i, i);
    if (std::abs(lambda) <= tol * scale) {
      throw GeometryError(ErrorCode::Singular, "real_log_principal: matrix is singular");
    }
    if (detail::on_negative_axis(lambda, tol)) {
      throw GeometryError(ErrorCode::SpectrumOnCut,
                          "real_log_principal: eigenvalue on the closed negative real axis");
    }
  }
  return detail::principal_log_unchecked<Scalar>(schur);
}

/// A^t = exp(t LOG(A)) for a matrix whose spectrum is positive real.
template <typename Derived>
Mat<typename Derived::Scalar> fractional_power(const Eigen::MatrixBase<Derived>& a_in,
                                               typename Derived::Scalar t,
                                               typename Derived::Scalar tol = kDefaultTolerance) {
  using Scalar = typename Derived::Scalar;
  detail::require_square(a_in, "fractional_power");
  const Mat<Scalar> a = a_in.eval();
  Eigen::ComplexSchur<CMat<Scalar>> schur(a.template cast<std::complex<Scalar>>());
  const Scalar scale = detail::spectrum_scale(a);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    const auto lambda = schur.matrixT()(i, i);
    if (std::abs(lambda) <= tol * scale || !detail::is_positive_real(lambda, tol)) {
      throw GeometryError(ErrorCode::SpectrumNotPositive,
                          "fractional_power: spectrum is not positive real");
    }
  }
  if (t == Scalar(0)) return Mat<Scalar>::Identity(a.rows(), a.cols());
  return expm(t * detail::principal_log_unchecked<Scalar>(schur));
}

}  // namespace tracegeo
