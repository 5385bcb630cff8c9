#pragma once

#include "tracegeo/core.hpp"

#include <Eigen/Eigenvalues>

namespace tracegeo {

/// g_A(V, W) = tr(A^{-1} V A^{-1} W), given A^{-1} already.
template <typename Scalar>
Scalar trace_metric_with_inverse(const Mat<Scalar>& a_inv, const Mat<Scalar>& v,
                                 const Mat<Scalar>& w) {
  const Mat<Scalar> left = a_inv * v;
  const Mat<Scalar> right = a_inv * w;
  // tr(XY) = sum_ij X_ij Y_ji
  return left.cwiseProduct(right.transpose()).sum();
}

/// The trace metric g_A(V, W) = tr(A^{-1} V A^{-1} W) on T_A GL_n = M_n.
template <typename DA, typename DV, typename DW>
typename DA::Scalar trace_metric(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DV>& v,
                                 const Eigen::MatrixBase<DW>& w) {
  using Scalar = typename DA::Scalar;
  detail::require_square(a, "trace_metric");
  detail::require_same_order(a, v, "trace_metric");
  detail::require_same_order(a, w, "trace_metric");
  return trace_metric_with_inverse<Scalar>(checked_inverse(a, "trace_metric"), v.eval(),
                                           w.eval());
}

/// Gram matrix G_ab = g_A(E_a, E_b) in the column-ordered coordinate basis.
template <typename Derived>
Mat<typename Derived::Scalar> metric_gram(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  const Mat<Scalar> a_inv = checked_inverse(a, "metric_gram");
  const Eigen::Index n = a.rows();
  const Eigen::Index dim = n * n;
  // g_A(E_ij, E_kl) = (A^{-1})_{li} (A^{-1})_{jk}
  Mat<Scalar> gram(dim, dim);
  for (Eigen::Index alpha = 0; alpha < dim; ++alpha) {
    const Eigen::Index i = alpha % n;
    const Eigen::Index j = alpha / n;
    for (Eigen::Index beta = 0; beta < dim; ++beta) {
      const Eigen::Index k = beta % n;
      const Eigen::Index l = beta / n;
      gram(alpha, beta) = a_inv(l, i) * a_inv(j, k);
    }
  }
  return gram;
}

struct MetricSignature {
  int positive = 0;
  int negative = 0;

  friend bool operator==(const MetricSignature&, const MetricSignature&) = default;
};

/// Counts the signs of the Gram eigenvalues of g_A. An eigenvalue below
/// 1e-10 times the largest magnitude means numerical breakdown and raises
/// DegenerateMetric.
template <typename Derived>
MetricSignature signature_at(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  detail::require_square(a, "signature_at");
  const Mat<Scalar> gram = metric_gram(a);
  Eigen::SelfAdjointEigenSolver<Mat<Scalar>> es(gram, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const Scalar threshold = Scalar(1e-10) * ev.cwiseAbs().maxCoeff();
  MetricSignature sig;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i)) <= threshold) {
      throw GeometryError(ErrorCode::DegenerateMetric,
                          "signature_at: Gram matrix has a vanishing eigenvalue");
    }
    (ev(i) > Scalar(0) ? sig.positive : sig.negative) += 1;
  }
  return sig;
}

/// Expected signature (n(n+1)/2, n(n-1)/2).
inline MetricSignature expected_signature(int n) {
  return {n * (n + 1) / 2, n * (n - 1) / 2};
}

}  // namespace tracegeo
