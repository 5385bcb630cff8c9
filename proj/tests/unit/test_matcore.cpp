#include "tracegeo/matcore.hpp"
#include "tracegeo/random.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace tracegeo;

namespace {

MatrixXd m2(double a, double b, double c, double d) {
  MatrixXd m(2, 2);
  m << a, b, c, d;
  return m;
}

// Truncated Taylor series after halving the argument s times.
MatrixXd taylor_exp(const MatrixXd& a) {
  int s = 0;
  while (a.norm() / std::ldexp(1.0, s) > 0.5) ++s;
  const MatrixXd b = a / std::ldexp(1.0, s);
  MatrixXd term = MatrixXd::Identity(a.rows(), a.cols());
  MatrixXd sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * b / k;
    sum += term;
  }
  for (int i = 0; i < s; ++i) sum = sum * sum;
  return sum;
}

MatrixXd nilpotent_shift(int k) {
  MatrixXd n = MatrixXd::Zero(k, k);
  for (int i = 0; i + 1 < k; ++i) n(i, i + 1) = 1.0;
  return n;
}

// log(lambda I + N) = log(lambda) I + sum_i (-1)^{i+1} N^i / (i lambda^i)
MatrixXd jordan_log(double lambda, int k) {
  const MatrixXd n = nilpotent_shift(k);
  MatrixXd out = std::log(lambda) * MatrixXd::Identity(k, k);
  MatrixXd p = MatrixXd::Identity(k, k);
  for (int i = 1; i < k; ++i) {
    p = p * n;
    out += (i % 2 == 1 ? 1.0 : -1.0) / (i * std::pow(lambda, i)) * p;
  }
  return out;
}

// (lambda I + N)^t = sum_i binom(t, i) lambda^{t-i} N^i
MatrixXd jordan_power(double lambda, int k, double t) {
  const MatrixXd n = nilpotent_shift(k);
  MatrixXd out = MatrixXd::Zero(k, k);
  MatrixXd p = MatrixXd::Identity(k, k);
  double binom = 1.0;
  for (int i = 0; i < k; ++i) {
    out += binom * std::pow(lambda, t - i) * p;
    binom *= (t - i) / (i + 1);
    p = p * n;
  }
  return out;
}

}  // namespace

TEST(Expm, ZeroIsIdentity) {
  EXPECT_TRUE(expm(MatrixXd::Zero(2, 2)).isApprox(MatrixXd::Identity(2, 2)));
}

TEST(Expm, Diagonal) {
  const MatrixXd e = expm(m2(1, 0, 0, -1));
  EXPECT_NEAR(e(0, 0), std::exp(1.0), 1e-14);
  EXPECT_NEAR(e(1, 1), std::exp(-1.0), 1e-15);
  EXPECT_EQ(e(0, 1), 0.0);
}

TEST(Expm, QuarterRotation) {
  const double h = std::numbers::pi / 2;
  EXPECT_LT((expm(m2(0, -h, h, 0)) - m2(0, -1, 1, 0)).norm(), 1e-15);
}

TEST(Expm, NilpotentSeriesTerminates) {
  const MatrixXd n = nilpotent_shift(4);
  const MatrixXd want = MatrixXd::Identity(4, 4) + n + n * n / 2 + n * n * n / 6;
  EXPECT_LT((expm(n) - want).norm(), 1e-15);
}

TEST(Expm, MatchesTaylorAcrossPadeDegrees) {
  MatrixSampler rng(11);
  for (double scale : {1e-3, 0.05, 0.3, 1.0, 2.5, 8.0}) {
    for (int n = 2; n <= 6; ++n) {
      const MatrixXd a = scale * rng.any(n);
      const MatrixXd want = taylor_exp(a);
      EXPECT_LT((expm(a) - want).norm(), 1e-12 * want.norm()) << "scale " << scale << " n " << n;
    }
  }
}

TEST(Expm, DerivativeAlongRay) {
  MatrixSampler rng(3);
  const MatrixXd a = rng.any(3);
  const double t = 0.4, h = 1e-5;
  const MatrixXd fd = (expm((t + h) * a) - expm((t - h) * a)) / (2 * h);
  EXPECT_LT((fd - a * expm(t * a)).norm(), 1e-8);
}

TEST(Logm, IdentityAndJordanBlock) {
  EXPECT_LT(real_log_principal(MatrixXd::Identity(2, 2)).norm(), 1e-15);
  EXPECT_LT((real_log_principal(m2(1, 1, 0, 1)) - m2(0, 1, 0, 0)).norm(), 1e-14);
}

TEST(Logm, AgreesWithJordanSeries) {
  for (double lambda : {0.3, 1.0, 2.5}) {
    for (int k = 1; k <= 5; ++k) {
      const MatrixXd j = lambda * MatrixXd::Identity(k, k) + nilpotent_shift(k);
      EXPECT_LT((real_log_principal(j) - jordan_log(lambda, k)).norm(), 1e-12)
          << "lambda " << lambda << " k " << k;
    }
  }
}

TEST(Logm, JordanSeriesSurvivesSimilarity) {
  MatrixSampler rng(5);
  const MatrixXd g = rng.invertible(4);
  MatrixXd j = MatrixXd::Zero(4, 4);
  j.topLeftCorner(3, 3) = 2.0 * MatrixXd::Identity(3, 3) + nilpotent_shift(3);
  j(3, 3) = 0.5;
  MatrixXd want = MatrixXd::Zero(4, 4);
  want.topLeftCorner(3, 3) = jordan_log(2.0, 3);
  want(3, 3) = std::log(0.5);
  const MatrixXd a = g * j * g.inverse();
  const MatrixXd expected = g * want * g.inverse();
  EXPECT_LT((real_log_principal(a) - expected).norm(), 1e-9 * expected.norm());
}

TEST(Logm, RoundTripOffTheCut) {
  MatrixSampler rng(8);
  int checked = 0;
  for (int n = 2; n <= 6; ++n) {
    for (int c = 0; c < 40; ++c) {
      const MatrixXd a = rng.invertible(n);
      MatrixXd l;
      try {
        l = real_log_principal(a);
      } catch (const GeometryError& e) {
        EXPECT_EQ(e.code(), ErrorCode::SpectrumOnCut);
        continue;
      }
      EXPECT_LT((expm(l) - a).norm(), 1e-8 * a.norm());
      ++checked;
    }
  }
  EXPECT_GT(checked, 50);
}

TEST(Logm, PrincipalStripForRotations) {
  const double theta = 2.9;
  const MatrixXd r = m2(std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta));
  EXPECT_LT((real_log_principal(r) - m2(0, -theta, theta, 0)).norm(), 1e-12);
}

TEST(Logm, Errors) {
  try {
    real_log_principal(m2(-2, 0, 0, 3));
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.code(), ErrorCode::SpectrumOnCut);
  }
  try {
    real_log_principal(m2(1, 2, 2, 4));
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.code(), ErrorCode::Singular);
  }
}

TEST(FractionalPower, Examples) {
  EXPECT_LT((fractional_power(m2(1, 0, 0, 4), 0.5) - m2(1, 0, 0, 2)).norm(), 1e-14);
  for (double t : {-1.5, 0.25, 0.7, 3.0}) {
    EXPECT_LT((fractional_power(m2(1, 1, 0, 1), t) - m2(1, t, 0, 1)).norm(), 1e-13) << t;
  }
  MatrixSampler rng(2);
  const MatrixXd a = rng.spd(3);
  EXPECT_EQ(fractional_power(a, 0.0), MatrixXd::Identity(3, 3));
  EXPECT_LT((fractional_power(a, 1.0) - a).norm(), 1e-12 * a.norm());
}

TEST(FractionalPower, BinomialJordanFormula) {
  for (double lambda : {0.5, 3.0}) {
    for (int k = 2; k <= 4; ++k) {
      const MatrixXd j = lambda * MatrixXd::Identity(k, k) + nilpotent_shift(k);
      for (double t : {-0.5, 0.3, 2.2}) {
        const MatrixXd want = jordan_power(lambda, k, t);
        EXPECT_LT((fractional_power(j, t) - want).norm(), 1e-12 * want.norm());
      }
    }
  }
}

TEST(FractionalPower, PowerLaw) {
  MatrixSampler rng(13);
  for (int n = 2; n <= 5; ++n) {
    const MatrixXd g = rng.invertible(n);
    MatrixXd d = MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) d(i, i) = rng.uniform(0.2, 3.0);
    const MatrixXd a = g * d * g.inverse();
    const double s = 0.37, t = -1.2;
    const MatrixXd lhs = fractional_power(a, s + t);
    EXPECT_LT((lhs - fractional_power(a, s) * fractional_power(a, t)).norm(), 1e-8 * lhs.norm());
  }
}

TEST(FractionalPower, RejectsNonPositiveSpectrum) {
  for (const MatrixXd& a : {m2(0, -1, 1, 0), m2(-1, 0, 0, 2)}) {
    try {
      fractional_power(a, 0.5);
      FAIL();
    } catch (const GeometryError& e) {
      EXPECT_EQ(e.code(), ErrorCode::SpectrumNotPositive);
    }
  }
}

TEST(SpectralProfile, Examples) {
  auto p = spectral_profile(MatrixXd::Identity(2, 2));
  ASSERT_EQ(p.clusters.size(), 1u);
  EXPECT_EQ(p.clusters[0].eigenvalue, std::complex<double>(1, 0));
  EXPECT_EQ(p.clusters[0].block_sizes, (std::vector<int>{1, 1}));

  p = spectral_profile(m2(1, 1, 0, 1));
  ASSERT_EQ(p.clusters.size(), 1u);
  EXPECT_EQ(p.clusters[0].block_sizes, (std::vector<int>{2}));

  p = spectral_profile(m2(2, 0, 0, 3));
  ASSERT_EQ(p.clusters.size(), 2u);
  EXPECT_NEAR(p.clusters[0].eigenvalue.real(), 2.0, 1e-15);
  EXPECT_NEAR(p.clusters[1].eigenvalue.real(), 3.0, 1e-15);
  EXPECT_EQ(p.clusters[0].block_sizes, (std::vector<int>{1}));
  EXPECT_DOUBLE_EQ(p.tolerance, 1e-8);
}

TEST(SpectralProfile, ConjugatePairsMirror) {
  const auto p = spectral_profile(m2(0, -1, 1, 0));
  ASSERT_EQ(p.clusters.size(), 2u);
  EXPECT_EQ(p.clusters[0].eigenvalue, std::conj(p.clusters[1].eigenvalue));
  EXPECT_EQ(p.clusters[0].block_sizes, p.clusters[1].block_sizes);
  EXPECT_FALSE(p.clusters[0].is_real());
}

TEST(SpectralProfile, ConjugatedJordanStructure) {
  // Blocks {3, 1} at 2 and {2, 2} at -1, hidden by a random similarity.
  MatrixXd j = MatrixXd::Zero(8, 8);
  j.block(0, 0, 3, 3) = 2.0 * MatrixXd::Identity(3, 3) + nilpotent_shift(3);
  j(3, 3) = 2.0;
  j.block(4, 4, 2, 2) = -MatrixXd::Identity(2, 2) + nilpotent_shift(2);
  j.block(6, 6, 2, 2) = -MatrixXd::Identity(2, 2) + nilpotent_shift(2);
  MatrixSampler rng(21);
  const MatrixXd g = rng.invertible(8);
  const auto p = spectral_profile(MatrixXd(g * j * g.inverse()));
  ASSERT_EQ(p.clusters.size(), 2u);
  EXPECT_NEAR(p.clusters[0].eigenvalue.real(), -1.0, 1e-6);
  EXPECT_EQ(p.clusters[0].block_sizes, (std::vector<int>{2, 2}));
  EXPECT_NEAR(p.clusters[1].eigenvalue.real(), 2.0, 1e-4);
  EXPECT_EQ(p.clusters[1].block_sizes, (std::vector<int>{3, 1}));
}

TEST(SpectralProfile, MassIsOrder) {
  MatrixSampler rng(4);
  for (int n = 2; n <= 6; ++n) {
    for (int c = 0; c < 20; ++c) {
      const auto p = spectral_profile(rng.any(n));
      EXPECT_EQ(p.order(), n);
      for (const auto& cl : p.clusters) {
        EXPECT_TRUE(std::is_sorted(cl.block_sizes.rbegin(), cl.block_sizes.rend()));
      }
    }
  }
}

TEST(Polar, Examples) {
  auto f = polar_decompose(MatrixXd::Identity(2, 2), PolarSide::Left);
  EXPECT_LT((f.orthogonal - MatrixXd::Identity(2, 2)).norm(), 1e-15);
  EXPECT_LT((f.positive - MatrixXd::Identity(2, 2)).norm(), 1e-15);

  f = polar_decompose(m2(0, -2, 3, 0), PolarSide::Left);
  EXPECT_LT((f.orthogonal - m2(0, -1, 1, 0)).norm(), 1e-14);
  EXPECT_LT((f.positive - m2(3, 0, 0, 2)).norm(), 1e-14);

  f = polar_decompose(m2(-1, 0, 0, 1), PolarSide::Left);
  EXPECT_LT((f.orthogonal - m2(-1, 0, 0, 1)).norm(), 1e-15);
  EXPECT_LT((f.positive - MatrixXd::Identity(2, 2)).norm(), 1e-15);
}

TEST(Polar, FactorInvariants) {
  MatrixSampler rng(6);
  for (int n = 2; n <= 6; ++n) {
    for (PolarSide side : {PolarSide::Left, PolarSide::Right}) {
      const MatrixXd a = rng.invertible(n);
      const auto f = polar_decompose(a, side);
      EXPECT_EQ(f.side, side);
      const MatrixXd eye = MatrixXd::Identity(n, n);
      EXPECT_LE((f.orthogonal.transpose() * f.orthogonal - eye).norm(), 1e-10);
      EXPECT_LE((f.positive - f.positive.transpose()).norm(), 1e-12);
      EXPECT_GT(Eigen::SelfAdjointEigenSolver<MatrixXd>(f.positive).eigenvalues().minCoeff(), 0);
      EXPECT_LE((f.product() - a).norm(), 1e-10);
      EXPECT_EQ(f.orthogonal.determinant() > 0, a.determinant() > 0);
      const MatrixXd direct = side == PolarSide::Left ? MatrixXd(f.orthogonal * f.positive)
                                                      : MatrixXd(f.positive * f.orthogonal);
      EXPECT_LE((direct - a).norm(), 1e-10);
    }
  }
}

TEST(Polar, SingularInput) {
  EXPECT_THROW(polar_decompose(m2(1, 1, 1, 1), PolarSide::Right), GeometryError);
}

TEST(SoLog, Examples) {
  const double pi = std::numbers::pi;
  EXPECT_EQ(so_log(MatrixXd::Identity(3, 3)).norm(), 0.0);
  EXPECT_LT((so_log(m2(0, -1, 1, 0)) - m2(0, -pi / 2, pi / 2, 0)).norm(), 1e-15);
  EXPECT_LT((so_log(MatrixXd(-MatrixXd::Identity(2, 2))) - m2(0, -pi, pi, 0)).norm(), 1e-15);
}

TEST(SoLog, RandomRotations) {
  MatrixSampler rng(9);
  for (int n = 2; n <= 6; ++n) {
    for (int c = 0; c < 10; ++c) {
      MatrixXd o = polar_decompose(rng.positive_det(n), PolarSide::Left).orthogonal;
      const MatrixXd l = so_log(o);
      EXPECT_EQ(l.transpose(), -l);
      EXPECT_LE((expm(l) - o).norm(), 1e-8);
    }
  }
}

TEST(SoLog, MinusOnePairsInsideLargerRotation) {
  MatrixXd o = -MatrixXd::Identity(5, 5);
  o(4, 4) = 1.0;
  MatrixSampler rng(10);
  const MatrixXd q = polar_decompose(rng.positive_det(5), PolarSide::Left).orthogonal;
  const MatrixXd rotated = q * o * q.transpose();
  const MatrixXd l = so_log(rotated);
  EXPECT_LE((expm(l) - rotated).norm(), 1e-8);
}

TEST(SoLog, RejectsImproperAndNonOrthogonal) {
  for (const MatrixXd& o : {m2(-1, 0, 0, 1), m2(1, 1, 0, 1)}) {
    try {
      so_log(o);
      FAIL();
    } catch (const GeometryError& e) {
      EXPECT_EQ(e.code(), ErrorCode::NotSpecialOrthogonal);
    }
  }
}

TEST(CartanKilling, Examples) {
  const MatrixXd eye = MatrixXd::Identity(2, 2);
  EXPECT_EQ(cartan_killing(eye, eye), 0.0);
  EXPECT_EQ(cartan_killing(m2(0, 1, 0, 0), m2(0, 0, 1, 0)), 4.0);
  MatrixSampler rng(1);
  EXPECT_EQ(cartan_killing(rng.any(3), MatrixXd::Zero(3, 3)), 0.0);
}

TEST(CartanKilling, SymmetricBilinear) {
  MatrixSampler rng(12);
  for (int c = 0; c < 20; ++c) {
    const MatrixXd x = rng.any(3), y = rng.any(3), z = rng.any(3);
    const double a = rng.uniform(), b = rng.uniform();
    EXPECT_NEAR(cartan_killing(x, y), cartan_killing(y, x), 1e-13);
    EXPECT_NEAR(cartan_killing(MatrixXd(a * x + b * z), y),
                a * cartan_killing(x, y) + b * cartan_killing(z, y), 1e-12);
  }
  EXPECT_THROW(cartan_killing(MatrixXd::Identity(2, 2), MatrixXd::Identity(3, 3)), GeometryError);
}
