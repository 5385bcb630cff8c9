#pragma once

#include "tracegeo/core.hpp"
#include "tracegeo/metric.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace tracegeo {

/// Christoffel symbols Gamma^c_{ab} over the n^2 natural coordinates, stored
/// densely with a, b, c in [0, n^2).
template <typename Scalar>
class ChristoffelSymbols {
 public:
  explicit ChristoffelSymbols(Eigen::Index dim)
      : dim_(dim), data_(static_cast<std::size_t>(dim * dim * dim), Scalar(0)) {}

  [[nodiscard]] Eigen::Index dim() const { return dim_; }

  Scalar& operator()(Eigen::Index upper, Eigen::Index a, Eigen::Index b) {
    return data_[index(upper, a, b)];
  }
  Scalar operator()(Eigen::Index upper, Eigen::Index a, Eigen::Index b) const {
    return data_[index(upper, a, b)];
  }

  [[nodiscard]] Scalar max_abs_difference(const ChristoffelSymbols& other) const {
    Scalar d = 0;
    for (std::size_t i = 0; i < data_.size(); ++i) {
      d = std::max(d, std::abs(data_[i] - other.data_[i]));
    }
    return d;
  }

  [[nodiscard]] Scalar max_abs() const {
    Scalar d = 0;
    for (Scalar v : data_) d = std::max(d, std::abs(v));
    return d;
  }

  /// Coordinate form of nabla_X Y for constant-coefficient fields:
  /// sum_{a,b} X^a Y^b Gamma^c_{ab} E_c.
  [[nodiscard]] Mat<Scalar> contract(const Mat<Scalar>& x, const Mat<Scalar>& y) const {
    const Eigen::Index n = x.rows();
    Mat<Scalar> out = Mat<Scalar>::Zero(n, n);
    for (Eigen::Index c = 0; c < dim_; ++c) {
      Scalar s = 0;
      for (Eigen::Index a = 0; a < dim_; ++a) {
        for (Eigen::Index b = 0; b < dim_; ++b) {
          s += x(a % n, a / n) * y(b % n, b / n) * (*this)(c, a, b);
        }
      }
      out(c % n, c / n) = s;
    }
    return out;
  }

 private:
  [[nodiscard]] std::size_t index(Eigen::Index upper, Eigen::Index a, Eigen::Index b) const {
    return static_cast<std::size_t>((upper * dim_ + a) * dim_ + b);
  }

  Eigen::Index dim_;
  std::vector<Scalar> data_;
};

/// Gamma^c_{ab} = -1/2 sum_d g^{cd} (tr(P^{-1}E_a P^{-1}E_b P^{-1}E_d) +
///                                  tr(P^{-1}E_b P^{-1}E_a P^{-1}E_d)).
template <typename Derived>
ChristoffelSymbols<typename Derived::Scalar> christoffel_closed_form(
    const Eigen::MatrixBase<Derived>& p) {
  using Scalar = typename Derived::Scalar;
  detail::require_square(p, "christoffel_closed_form");
  const Eigen::Index n = p.rows();
  const Eigen::Index dim = n * n;
  const Mat<Scalar> p_inv = checked_inverse(p, "christoffel_closed_form");
  const Mat<Scalar> gram_inv = checked_inverse(metric_gram(p), "christoffel_closed_form");

  std::vector<Mat<Scalar>> pe(static_cast<std::size_t>(dim));  // P^{-1} E_a
  for (Eigen::Index a = 0; a < dim; ++a) pe[a] = p_inv * coordinate_basis<Scalar>(n, a);

  // lowered(d, a, b) = tr(P^{-1}E_a P^{-1}E_b P^{-1}E_d) + (a <-> b)
  ChristoffelSymbols<Scalar> lowered(dim);
  for (Eigen::Index a = 0; a < dim; ++a) {
    for (Eigen::Index b = a; b < dim; ++b) {
      const Mat<Scalar> ab = pe[a] * pe[b];
      const Mat<Scalar> ba = pe[b] * pe[a];
      for (Eigen::Index d = 0; d < dim; ++d) {
        const Scalar v = ab.cwiseProduct(pe[d].transpose()).sum() +
                         ba.cwiseProduct(pe[d].transpose()).sum();
        lowered(d, a, b) = v;
        lowered(d, b, a) = v;
      }
    }
  }
  ChristoffelSymbols<Scalar> gamma(dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    for (Eigen::Index a = 0; a < dim; ++a) {
      for (Eigen::Index b = 0; b < dim; ++b) {
        Scalar s = 0;
        for (Eigen::Index d = 0; d < dim; ++d) s += gram_inv(c, d) * lowered(d, a, b);
        gamma(c, a, b) = Scalar(-0.5) * s;
      }
    }
  }
  return gamma;
}

/// Gamma^c_{ab} = 1/2 sum_d g^{cd} (g_{ad,b} + g_{bd,a} - g_{ab,d}) with the
/// metric derivatives taken by central differences of step h in the natural
/// coordinates.
template <typename Derived>
ChristoffelSymbols<typename Derived::Scalar> christoffel_finite_difference(
    const Eigen::MatrixBase<Derived>& p_in, typename Derived::Scalar h) {
  using Scalar = typename Derived::Scalar;
  detail::require_square(p_in, "christoffel_finite_difference");
  if (!(h > Scalar(0))) {
    throw GeometryError(ErrorCode::InvalidArgument,
                        "christoffel_finite_difference: step must be positive");
  }
  const Mat<Scalar> p = p_in.eval();
  const Eigen::Index n = p.rows();
  const Eigen::Index dim = n * n;
  const Mat<Scalar> gram_inv = checked_inverse(metric_gram(p), "christoffel_finite_difference");

  // dgram[d](a, b) = d g_{ab} / d p^d
  std::vector<Mat<Scalar>> dgram(static_cast<std::size_t>(dim));
  for (Eigen::Index d = 0; d < dim; ++d) {
    const Mat<Scalar> step = h * coordinate_basis<Scalar>(n, d);
    dgram[d] = (metric_gram(p + step) - metric_gram(p - step)) / (Scalar(2) * h);
  }
  ChristoffelSymbols<Scalar> gamma(dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    for (Eigen::Index a = 0; a < dim; ++a) {
      for (Eigen::Index b = 0; b < dim; ++b) {
        Scalar s = 0;
        for (Eigen::Index d = 0; d < dim; ++d) {
          s += gram_inv(c, d) * (dgram[b](a, d) + dgram[a](b, d) - dgram[d](a, b));
        }
        gamma(c, a, b) = Scalar(0.5) * s;
      }
    }
  }
  return gamma;
}

template <typename Scalar>
struct ChristoffelComparison {
  ChristoffelSymbols<Scalar> closed_form;
  ChristoffelSymbols<Scalar> finite_difference;
  Scalar max_discrepancy;
};

/// Both Christoffel routes at P; OracleMismatch when they disagree by more
/// than tol (absolute, entrywise).
template <typename Derived>
ChristoffelComparison<typename Derived::Scalar> christoffel_fd_oracle(
    const Eigen::MatrixBase<Derived>& p, typename Derived::Scalar h = 1e-4,
    typename Derived::Scalar tol = 1e-5) {
  using Scalar = typename Derived::Scalar;
  ChristoffelComparison<Scalar> cmp{christoffel_closed_form(p),
                                    christoffel_finite_difference(p, h), Scalar(0)};
  cmp.max_discrepancy = cmp.closed_form.max_abs_difference(cmp.finite_difference);
  if (!(cmp.max_discrepancy <= tol)) {
    throw GeometryError(ErrorCode::OracleMismatch,
                        "christoffel_fd_oracle: closed form and finite differences disagree");
  }
  return cmp;
}

}  // namespace tracegeo
