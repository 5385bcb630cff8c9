#pragma once

#include "tracegeo/core.hpp"
#include "tracegeo/geodesic.hpp"
#include "tracegeo/matcore/logm.hpp"
#include "tracegeo/matcore/polar.hpp"
#include "tracegeo/matcore/so_log.hpp"
#include "tracegeo/matcore/spectral_profile.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tracegeo {

/// Cardinality of the set of geodesic arcs joining two points.
enum class ArcVerdict { NoArc, Unique, CountablyInfinite, Continuum };

inline std::string_view verdict_name(ArcVerdict v) {
  switch (v) {
    case ArcVerdict::NoArc:
      return "no-arc";
    case ArcVerdict::Unique:
      return "unique";
    case ArcVerdict::CountablyInfinite:
      return "countable";
    case ArcVerdict::Continuum:
      return "continuum";
  }
  return "unknown";
}

template <typename Scalar>
struct ArcClassification {
  ArcVerdict verdict = ArcVerdict::NoArc;
  /// One arc from K0 (t = 0) to K1 (t = 1); empty iff verdict is NoArc.
  std::optional<Geodesic<Scalar>> witness;
  /// Jordan structure of K0^{-1} K1.
  SpectralProfile<Scalar> profile;
};

template <typename Scalar>
struct BrokenArc {
  Geodesic<Scalar> first;   ///< K1 -> Z on [0, 1]
  Geodesic<Scalar> second;  ///< Z -> K2 on [0, 1]
  Mat<Scalar> joint;
};

/// Decides existence and cardinality of real solutions of exp(X) = M from
/// the Jordan structure of M:
///  - no arc when a negative eigenvalue has a block size occurring an odd
///    number of times;
///  - unique when the spectrum is positive real and no (eigenvalue, size)
///    block repeats;
///  - countably many when non-real eigenvalues own one block each and the
///    real ones are positive without repeated blocks;
///  - a continuum otherwise.
template <typename Scalar>
ArcVerdict verdict_from_profile(const SpectralProfile<Scalar>& profile) {
  bool any_negative = false;
  bool all_positive_real = true;
  bool repeated_positive = false;
  bool complex_multi_block = false;
  for (const auto& c : profile.clusters) {
    if (c.is_real() && c.eigenvalue.real() < Scalar(0)) {
      any_negative = true;
      all_positive_real = false;
      std::map<int, int> counts;
      for (int k : c.block_sizes) ++counts[k];
      for (const auto& [size, count] : counts) {
        if (count % 2 != 0) return ArcVerdict::NoArc;
      }
    } else if (c.is_real()) {
      repeated_positive = repeated_positive || c.has_repeated_block();
    } else {
      all_positive_real = false;
      complex_multi_block = complex_multi_block || c.block_sizes.size() > 1;
    }
  }
  if (all_positive_real && !repeated_positive) return ArcVerdict::Unique;
  if (!any_negative && !repeated_positive && !complex_multi_block) {
    return ArcVerdict::CountablyInfinite;
  }
  return ArcVerdict::Continuum;
}

namespace detail {

/// Orthonormal basis of the kernel of a, of known dimension.
template <typename Scalar>
Mat<Scalar> kernel_basis(const Mat<Scalar>& a, Eigen::Index dim) {
  Eigen::JacobiSVD<Mat<Scalar>> svd(a, Eigen::ComputeFullV);
  return svd.matrixV().rightCols(dim);
}

template <typename Scalar>
Mat<Scalar> range_basis(const Mat<Scalar>& a, Eigen::Index dim) {
  Eigen::JacobiSVD<Mat<Scalar>> svd(a, Eigen::ComputeFullU);
  return svd.matrixU().leftCols(dim);
}

template <typename Scalar>
Mat<Scalar> matrix_power(const Mat<Scalar>& a, int k) {
  Mat<Scalar> p = Mat<Scalar>::Identity(a.rows(), a.cols());
  for (int i = 0; i < k; ++i) p = (p * a).eval();
  return p;
}

/// Real logarithm of N = lambda I + E with lambda < 0, E nilpotent and every
/// Jordan block size of E occurring an even number of times:
///   log|lambda| I + sum_i (-1)^{i+1} E^i / (i lambda^i) + pi J,
/// where J^2 = -I pairs equal-size Jordan chains and commutes with E.
template <typename Scalar>
Mat<Scalar> negative_cluster_log(const Mat<Scalar>& nblock, Scalar lambda,
                                 const std::vector<int>& sizes) {
  const Eigen::Index m = nblock.rows();
  const Mat<Scalar> id = Mat<Scalar>::Identity(m, m);
  const Mat<Scalar> e = nblock - lambda * id;

  const int largest = sizes.empty() ? 0 : sizes.front();
  auto kernel_dim = [&](int k) {
    Eigen::Index d = 0;
    for (int s : sizes) d += std::min(s, k);
    return d;
  };

  // Jordan chains, built from the longest down.
  struct Chain {
    int size;
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> top;
  };
  std::vector<Chain> chains;
  for (int k = largest; k >= 1; --k) {
    const int wanted =
        static_cast<int>(std::count(sizes.begin(), sizes.end(), k));
    if (wanted == 0) continue;
    const Mat<Scalar> kernel_k = kernel_basis<Scalar>(matrix_power(e, k), kernel_dim(k));
    std::vector<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>> span;
    if (k > 1) {
      const Mat<Scalar> lower = kernel_basis<Scalar>(matrix_power(e, k - 1), kernel_dim(k - 1));
      for (Eigen::Index c = 0; c < lower.cols(); ++c) span.emplace_back(lower.col(c));
    }
    for (const auto& ch : chains) span.emplace_back(matrix_power(e, ch.size - k) * ch.top);
    Mat<Scalar> projected = kernel_k;
    if (!span.empty()) {
      Mat<Scalar> s(m, static_cast<Eigen::Index>(span.size()));
      for (std::size_t c = 0; c < span.size(); ++c) s.col(static_cast<Eigen::Index>(c)) = span[c];
      const Eigen::Index rank =
          (k > 1 ? kernel_dim(k - 1) : 0) + static_cast<Eigen::Index>(chains.size());
      const Mat<Scalar> q = range_basis<Scalar>(s, rank);
      projected = kernel_k - q * (q.transpose() * kernel_k);
    }
    const Mat<Scalar> tops = range_basis<Scalar>(projected, wanted);
    for (int c = 0; c < wanted; ++c) chains.push_back({k, tops.col(c)});
  }

  // Columns E^{s-1} v, ..., E v, v per chain; chains of equal size adjacent.
  Mat<Scalar> basis(m, m);
  std::vector<std::pair<Eigen::Index, int>> offsets;
  Eigen::Index col = 0;
  for (const auto& ch : chains) {
    offsets.emplace_back(col, ch.size);
    for (int p = ch.size - 1; p >= 0; --p) basis.col(col++) = matrix_power(e, p) * ch.top;
  }
  Mat<Scalar> rotation = Mat<Scalar>::Zero(m, m);
  for (std::size_t c = 0; c + 1 < offsets.size(); c += 2) {
    const auto [oa, s] = offsets[c];
    const auto ob = offsets[c + 1].first;
    for (int r = 0; r < s; ++r) {
      rotation(oa + r, ob + r) = Scalar(-1);
      rotation(ob + r, oa + r) = Scalar(1);
    }
  }
  const Scalar pi = std::numbers::pi_v<Scalar>;
  Mat<Scalar> log = std::log(-lambda) * id;
  Mat<Scalar> term = id;
  for (int i = 1; i < largest; ++i) {
    term = (term * e).eval() / lambda;
    log += (i % 2 == 1 ? Scalar(1) : Scalar(-1)) / Scalar(i) * term;
  }
  log += pi * basis * rotation * basis.inverse();
  return log;
}

}  // namespace detail

/// A real logarithm of M chosen block-wise: principal branch away from the
/// negative axis, angle-pi rotations pairing the Jordan chains of each
/// negative eigenvalue. Requires a verdict other than NoArc.
template <typename Scalar>
Mat<Scalar> real_log_witness(const Mat<Scalar>& m, const SpectralProfile<Scalar>& profile) {
  const Scalar tol = profile.tolerance;
  std::vector<const EigenCluster<Scalar>*> negatives;
  for (const auto& c : profile.clusters) {
    if (c.is_real() && c.eigenvalue.real() < Scalar(0)) negatives.push_back(&c);
  }
  if (negatives.empty()) return real_log_principal(m, tol);

  const Eigen::Index n = m.rows();
  const Mat<Scalar> id = Mat<Scalar>::Identity(n, n);
  Mat<Scalar> basis(n, n);
  Mat<Scalar> annihilator = id;
  Eigen::Index col = 0;
  for (const auto* c : negatives) {
    const int mult = c->multiplicity();
    const Mat<Scalar> shifted =
        detail::matrix_power<Scalar>(m - c->eigenvalue.real() * id, mult);
    basis.middleCols(col, mult) = detail::kernel_basis<Scalar>(shifted, mult);
    annihilator = (annihilator * shifted).eval();
    col += mult;
  }
  const Eigen::Index rest = n - col;
  if (rest > 0) basis.rightCols(rest) = detail::range_basis<Scalar>(annihilator, rest);

  const Mat<Scalar> basis_inv = checked_inverse(basis, "real_log_witness");
  const Mat<Scalar> local = basis_inv * m * basis;
  Mat<Scalar> local_log = Mat<Scalar>::Zero(n, n);
  col = 0;
  for (const auto* c : negatives) {
    const int mult = c->multiplicity();
    local_log.block(col, col, mult, mult) = detail::negative_cluster_log<Scalar>(
        local.block(col, col, mult, mult), c->eigenvalue.real(), c->block_sizes);
    col += mult;
  }
  if (rest > 0) {
    local_log.block(col, col, rest, rest) =
        real_log_principal(Mat<Scalar>(local.block(col, col, rest, rest)), tol);
  }
  return basis * local_log * basis_inv;
}

/// Classifies the geodesic arcs from K0 to K1 through the Jordan structure of
/// K0^{-1} K1 and attaches one witness arc when any exists. The verdict is
/// recomputed at tol / 10 and 10 tol; disagreement raises IllConditioned.
template <typename D0, typename D1>
ArcClassification<typename D0::Scalar> classify_arc(const Eigen::MatrixBase<D0>& k0,
                                                    const Eigen::MatrixBase<D1>& k1,
                                                    typename D0::Scalar tol = kDefaultTolerance) {
  using Scalar = typename D0::Scalar;
  detail::require_square(k0, "classify_arc");
  detail::require_square(k1, "classify_arc");
  detail::require_same_order(k0, k1, "classify_arc");
  (void)checked_inverse(k1, "classify_arc");
  const Mat<Scalar> m = checked_inverse(k0, "classify_arc") * k1;

  ArcClassification<Scalar> out;
  out.profile = spectral_profile(m, tol);
  out.verdict = verdict_from_profile(out.profile);
  for (const Scalar probe : {tol / Scalar(10), tol * Scalar(10)}) {
    if (verdict_from_profile(spectral_profile(m, probe)) != out.verdict) {
      throw GeometryError(ErrorCode::IllConditioned,
                          "classify_arc: Jordan structure is ambiguous at this tolerance");
    }
  }
  if (out.verdict != ArcVerdict::NoArc) {
    out.witness.emplace(k0.eval(), real_log_witness(m, out.profile));
  }
  return out;
}

/// gamma(t) = K0 (K0^{-1} K1)^t, the arc joining K0 and K1 when it is unique.
template <typename D0, typename D1>
Geodesic<typename D0::Scalar> unique_arc(const Eigen::MatrixBase<D0>& k0,
                                         const Eigen::MatrixBase<D1>& k1,
                                         typename D0::Scalar tol = kDefaultTolerance) {
  using Scalar = typename D0::Scalar;
  const ArcClassification<Scalar> cls = classify_arc(k0, k1, tol);
  if (cls.verdict != ArcVerdict::Unique) {
    throw GeometryError(ErrorCode::NotUnique,
                        std::string("unique_arc: verdict is ") +
                            std::string(verdict_name(cls.verdict)));
  }
  const Mat<Scalar> m = checked_inverse(k0) * k1;
  return Geodesic<Scalar>(k0.eval(), real_log_principal(m, tol));
}

/// Singly broken arc K1 -> Z -> K2 through Z = P2 O1, with K1 = O1 P1 (left
/// polar) and K2 = P2 O2 (right polar). The first leg solves
/// exp(C) = P1^{-1} O1^T P2 O1 (positive spectrum), the second
/// exp(C) = O1^T O2 in SO_n.
template <typename D1, typename D2>
BrokenArc<typename D1::Scalar> broken_arc(const Eigen::MatrixBase<D1>& k1_in,
                                          const Eigen::MatrixBase<D2>& k2_in,
                                          typename D1::Scalar tol = kDefaultTolerance) {
  using Scalar = typename D1::Scalar;
  detail::require_square(k1_in, "broken_arc");
  detail::require_same_order(k1_in, k2_in, "broken_arc");
  const Mat<Scalar> k1 = k1_in.eval();
  const Mat<Scalar> k2 = k2_in.eval();
  (void)checked_inverse(k1, "broken_arc");
  (void)checked_inverse(k2, "broken_arc");
  if ((k1.determinant() > Scalar(0)) != (k2.determinant() > Scalar(0))) {
    throw GeometryError(ErrorCode::DifferentComponents,
                        "broken_arc: endpoints lie in different components");
  }
  const PolarFactors<Scalar> left = polar_decompose(k1, PolarSide::Left);
  const PolarFactors<Scalar> right = polar_decompose(k2, PolarSide::Right);
  const Mat<Scalar>& o1 = left.orthogonal;
  const Mat<Scalar> joint = right.positive * o1;
  const Mat<Scalar> first_target =
      checked_inverse(left.positive) * (o1.transpose() * right.positive * o1);
  const Mat<Scalar> rotation = o1.transpose() * right.orthogonal;
  return BrokenArc<Scalar>{Geodesic<Scalar>(k1, real_log_principal(first_target, tol)),
                           Geodesic<Scalar>(joint, so_log(rotation, tol)), joint};
}

}  // namespace tracegeo
