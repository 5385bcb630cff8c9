#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tracegeo {

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using CMat = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

using MatrixXd = Mat<double>;

enum class ErrorCode {
  Singular,
  DimensionMismatch,
  NotSquare,
  NonFinite,
  SpectrumOnCut,
  SpectrumNotPositive,
  NotSpecialOrthogonal,
  DegenerateMetric,
  NotUnimodular,
  NonPositiveDeterminant,
  NotSPD,
  NotSymmetric,
  NotUnique,
  DifferentComponents,
  IllConditioned,
  DegenerateSection,
  LinearlyDependent,
  OracleMismatch,
  NotTangent,
  InvalidArgument,
};

/// Stable kebab-case name, used as the `error` field of CLI output.
std::string_view error_code_name(ErrorCode code) noexcept;

class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

namespace detail {

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw GeometryError(ErrorCode::NotSquare,
                        std::string(what) + ": expected a non-empty square matrix");
  }
  if (!a.allFinite()) {
    throw GeometryError(ErrorCode::NonFinite, std::string(what) + ": non-finite entry");
  }
}

template <typename DA, typename DB>
void require_same_order(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b,
                        const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw GeometryError(ErrorCode::DimensionMismatch,
                        std::string(what) + ": operands have different orders");
  }
}

}  // namespace detail

/// Inverse through a pivoted LU, failing with Singular when the matrix is
/// numerically rank deficient (reciprocal condition below roughly machine
/// epsilon).
template <typename Derived>
Mat<typename Derived::Scalar> checked_inverse(const Eigen::MatrixBase<Derived>& a,
                                              const char* what = "inverse") {
  using Scalar = typename Derived::Scalar;
  detail::require_square(a, what);
  Eigen::PartialPivLU<Mat<Scalar>> lu(a.eval());
  const Scalar rcond = lu.rcond();
  if (!(rcond > Scalar(64) * Eigen::NumTraits<Scalar>::epsilon())) {
    throw GeometryError(ErrorCode::Singular, std::string(what) + ": matrix is singular");
  }
  return lu.inverse();
}

template <typename Scalar>
Mat<Scalar> commutator(const Mat<Scalar>& a, const Mat<Scalar>& b) {
  return a * b - b * a;
}

/// Standard basis matrix E_ij.
template <typename Scalar = double>
Mat<Scalar> unit_matrix(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  Mat<Scalar> e = Mat<Scalar>::Zero(n, n);
  e(i, j) = Scalar(1);
  return e;
}

/// E_alpha in the column-by-column ordering of the natural coordinates:
/// alpha = i + j * n addresses entry (i, j).
template <typename Scalar = double>
Mat<Scalar> coordinate_basis(Eigen::Index n, Eigen::Index alpha) {
  return unit_matrix<Scalar>(n, alpha % n, alpha / n);
}

}  // namespace tracegeo
