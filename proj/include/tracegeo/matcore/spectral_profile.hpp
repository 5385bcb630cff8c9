#pragma once

#include "tracegeo/core.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace tracegeo {

template <typename Scalar>
struct EigenCluster {
  std::complex<Scalar> eigenvalue;
  /// Jordan block sizes, sorted in decreasing order.
  std::vector<int> block_sizes;

  [[nodiscard]] int multiplicity() const {
    int m = 0;
    for (int k : block_sizes) m += k;
    return m;
  }
  [[nodiscard]] bool is_real() const { return eigenvalue.imag() == Scalar(0); }
  [[nodiscard]] bool has_repeated_block() const {
    return std::adjacent_find(block_sizes.begin(), block_sizes.end()) != block_sizes.end();
  }
};

/// Numerical Jordan structure: eigenvalue clusters with their block sizes.
/// Non-real clusters come in conjugate pairs with identical block sizes.
template <typename Scalar>
struct SpectralProfile {
  std::vector<EigenCluster<Scalar>> clusters;
  Scalar tolerance = Scalar(0);

  [[nodiscard]] int order() const {
    int n = 0;
    for (const auto& c : clusters) n += c.multiplicity();
    return n;
  }
};

namespace detail {

template <typename Scalar>
Scalar two_norm(const Mat<Scalar>& a) {
  if (a.size() == 0) return Scalar(0);
  Eigen::JacobiSVD<Mat<Scalar>> svd(a);
  return svd.singularValues()(0);
}

template <typename Scalar>
Eigen::Index numerical_rank(const CMat<Scalar>& a, Scalar threshold) {
  Eigen::JacobiSVD<CMat<Scalar>> svd(a);
  const auto& s = svd.singularValues();
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) r += s(i) > threshold ? 1 : 0;
  return r;
}

/// Single-linkage clustering of points in the complex plane.
template <typename Scalar>
std::vector<std::vector<std::complex<Scalar>>> cluster_points(
    std::vector<std::complex<Scalar>> pts, Scalar radius) {
  std::vector<std::vector<std::complex<Scalar>>> groups;
  std::vector<int> label(pts.size(), -1);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (label[i] >= 0) continue;
    label[i] = static_cast<int>(groups.size());
    groups.emplace_back();
    std::vector<std::size_t> stack{i};
    while (!stack.empty()) {
      const std::size_t p = stack.back();
      stack.pop_back();
      groups.back().push_back(pts[p]);
      for (std::size_t q = 0; q < pts.size(); ++q) {
        if (label[q] < 0 && std::abs(pts[p] - pts[q]) <= radius) {
          label[q] = label[i];
          stack.push_back(q);
        }
      }
    }
  }
  return groups;
}

template <typename Scalar>
std::complex<Scalar> centroid(const std::vector<std::complex<Scalar>>& group) {
  std::complex<Scalar> c(0, 0);
  for (const auto& z : group) c += z;
  return c / Scalar(group.size());
}

/// True when the kernels of (A - mu I)^j grow strictly with j and reach
/// dimension k, i.e. A is within tolerance of a matrix with a k-fold
/// eigenvalue at mu.
template <typename Scalar>
bool staircase_reaches(const Mat<Scalar>& a, std::complex<Scalar> mu, int k, Scalar tol,
                       Scalar scale) {
  using Complex = std::complex<Scalar>;
  const Eigen::Index n = a.rows();
  const CMat<Scalar> shifted = a.template cast<Complex>() - mu * CMat<Scalar>::Identity(n, n);
  CMat<Scalar> power = CMat<Scalar>::Identity(n, n);
  Scalar threshold = tol;
  Eigen::Index previous = 0;
  for (int j = 1; j <= k; ++j) {
    power = (power * shifted).eval();
    threshold *= scale;
    const Eigen::Index kernel = n - numerical_rank(power, threshold);
    if (kernel >= k) return true;
    if (kernel <= previous) return false;
    previous = kernel;
  }
  return false;
}

/// Merges neighbouring clusters whose union passes the staircase test.
/// Defective eigenvalues split by roughly (eps ||A||)^(1/k) under rounding,
/// far beyond the plain clustering radius.
template <typename Scalar>
void merge_defective_clusters(const Mat<Scalar>& a,
                              std::vector<std::vector<std::complex<Scalar>>>& groups, Scalar tol,
                              Scalar scale) {
  for (;;) {
    struct Candidate {
      Scalar distance;
      std::size_t i, j;
    };
    std::vector<Candidate> candidates;
    for (std::size_t i = 0; i < groups.size(); ++i) {
      for (std::size_t j = i + 1; j < groups.size(); ++j) {
        const int k = static_cast<int>(groups[i].size() + groups[j].size());
        const Scalar d = std::abs(centroid(groups[i]) - centroid(groups[j]));
        if (d <= scale * std::pow(tol, Scalar(1) / Scalar(k))) candidates.push_back({d, i, j});
      }
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate& x, const Candidate& y) { return x.distance < y.distance; });
    bool merged = false;
    for (const auto& c : candidates) {
      std::vector<std::complex<Scalar>> joined = groups[c.i];
      joined.insert(joined.end(), groups[c.j].begin(), groups[c.j].end());
      if (staircase_reaches(a, centroid(joined), static_cast<int>(joined.size()), tol, scale)) {
        groups[c.i] = std::move(joined);
        groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(c.j));
        merged = true;
        break;
      }
    }
    if (!merged) return;
  }
}

/// Block sizes for one cluster from the kernel dimensions d_k of (A - lambda I)^k.
/// The number of blocks of size >= k is d_k - d_{k-1}.
template <typename Scalar>
std::vector<int> block_sizes_from_ranks(const Mat<Scalar>& a, std::complex<Scalar> lambda,
                                        int multiplicity, Scalar tol, Scalar scale) {
  using Complex = std::complex<Scalar>;
  const Eigen::Index n = a.rows();
  const CMat<Scalar> shifted =
      a.template cast<Complex>() - lambda * CMat<Scalar>::Identity(n, n);
  std::vector<int> at_least;  // at_least[k-1] = number of blocks of size >= k
  CMat<Scalar> power = CMat<Scalar>::Identity(n, n);
  int previous_kernel = 0;
  Scalar threshold = tol;
  for (int k = 1; k <= multiplicity; ++k) {
    power = (power * shifted).eval();
    threshold *= scale;
    int kernel = static_cast<int>(n - numerical_rank(power, threshold));
    kernel = std::clamp(kernel, previous_kernel, multiplicity);
    if (k == 1) kernel = std::max(kernel, 1);
    if (k == multiplicity) kernel = multiplicity;
    const int count = kernel - previous_kernel;
    if (count == 0) break;
    at_least.push_back(at_least.empty() ? count : std::min(count, at_least.back()));
    previous_kernel = kernel;
    if (kernel == multiplicity) break;
  }
  int mass = 0;
  for (int c : at_least) mass += c;
  if (mass < multiplicity) at_least.front() += multiplicity - mass;

  std::vector<int> sizes;
  for (std::size_t k = 0; k < at_least.size(); ++k) {
    const int next = k + 1 < at_least.size() ? at_least[k + 1] : 0;
    for (int c = 0; c < at_least[k] - next; ++c) sizes.push_back(static_cast<int>(k + 1));
  }
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  return sizes;
}

}  // namespace detail

/// Eigenvalues merge when |l_i - l_j| <= tol * max(1, ||A||_2), or when the
/// merged cluster passes the rank staircase test (defective eigenvalues). A
/// cluster whose centre has imaginary part below tol * max(1, |l|) is real. Block
/// sizes come from the rank sequence of (A - lambda I)^k with singular
/// values below tol * max(1, ||A||_2)^k counted as zero.
template <typename Derived>
SpectralProfile<typename Derived::Scalar> spectral_profile(
    const Eigen::MatrixBase<Derived>& a_in, typename Derived::Scalar tol = 1e-8) {
  using Scalar = typename Derived::Scalar;
  using Complex = std::complex<Scalar>;
  detail::require_square(a_in, "spectral_profile");
  const Mat<Scalar> a = a_in.eval();
  const Scalar scale = std::max(Scalar(1), detail::two_norm(a));

  Eigen::EigenSolver<Mat<Scalar>> es(a, false);
  std::vector<Complex> pts(es.eigenvalues().data(),
                           es.eigenvalues().data() + es.eigenvalues().size());
  auto groups = detail::cluster_points(pts, tol * scale);
  detail::merge_defective_clusters(a, groups, tol, scale);

  SpectralProfile<Scalar> profile;
  profile.tolerance = tol;
  for (const auto& group : groups) {
    Complex centre = detail::centroid(group);
    const int m = static_cast<int>(group.size());
    if (std::abs(centre.imag()) <= tol * std::max(Scalar(1), std::abs(centre))) {
      centre = Complex(centre.real(), Scalar(0));
    } else if (centre.imag() < Scalar(0)) {
      continue;  // mirrored from its upper half-plane partner
    }
    EigenCluster<Scalar> cluster{centre, detail::block_sizes_from_ranks(a, centre, m, tol, scale)};
    profile.clusters.push_back(cluster);
    if (centre.imag() != Scalar(0)) {
      cluster.eigenvalue = std::conj(centre);
      profile.clusters.push_back(cluster);
    }
  }

  std::stable_sort(profile.clusters.begin(), profile.clusters.end(),
                   [](const auto& x, const auto& y) {
                     if (x.eigenvalue.real() != y.eigenvalue.real()) {
                       return x.eigenvalue.real() < y.eigenvalue.real();
                     }
                     return x.eigenvalue.imag() > y.eigenvalue.imag();
                   });
  return profile;
}

}  // namespace tracegeo
