#pragma once

#include "tracegeo/core.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <random>

namespace tracegeo {

/// Seeded sampler for the property suites. Entries are uniform in [-1, 1];
/// invertible draws are resampled until |det| >= 0.1 and the 2-norm
/// condition number is at most 100.
class MatrixSampler {
 public:
  explicit MatrixSampler(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = -1.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }

  MatrixXd any(Eigen::Index n, double half_width = 1.0) {
    MatrixXd a(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = 0; i < n; ++i) a(i, j) = uniform(-half_width, half_width);
    }
    return a;
  }

  MatrixXd invertible(Eigen::Index n) {
    for (;;) {
      MatrixXd a = any(n);
      if (std::abs(a.determinant()) < 0.1) continue;
      Eigen::JacobiSVD<MatrixXd> svd(a);
      const auto& s = svd.singularValues();
      if (s(0) / s(n - 1) <= 100.0) return a;
    }
  }

  /// Invertible with det > 0 (a row flip fixes the sign).
  MatrixXd positive_det(Eigen::Index n) {
    MatrixXd a = invertible(n);
    if (a.determinant() < 0) a.row(0) *= -1.0;
    return a;
  }

  /// G G^T with G invertible.
  MatrixXd spd(Eigen::Index n) {
    const MatrixXd g = invertible(n);
    MatrixXd s = g * g.transpose();
    return 0.5 * (s + s.transpose());
  }

  MatrixXd symmetric(Eigen::Index n) {
    const MatrixXd a = any(n);
    return 0.5 * (a + a.transpose());
  }

  /// Determinant-one matrix, scaled from an invertible draw with det > 0.
  MatrixXd unimodular(Eigen::Index n) {
    const MatrixXd a = positive_det(n);
    return a / std::pow(a.determinant(), 1.0 / static_cast<double>(n));
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tracegeo
