#include "tracegeo/foliation.hpp"
#include "tracegeo/isometry.hpp"
#include "tracegeo/metric.hpp"
#include "tracegeo/random.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>

using namespace tracegeo;

namespace {

MatrixXd m2(double a, double b, double c, double d) {
  MatrixXd m(2, 2);
  m << a, b, c, d;
  return m;
}

MatrixXd eye(int n) { return MatrixXd::Identity(n, n); }

std::array<IsometryMap<double>, 8> all_maps(const MatrixXd& g) {
  return {iso::LeftTranslate<double>{g}, iso::RightTranslate<double>{g},
          iso::Conjugate<double>{g},     iso::Congruence<double>{g},
          iso::Inversion{},              iso::Transposition{},
          iso::Negation{},               iso::PointSymmetry<double>{g}};
}

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const GeometryError& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(TraceMetric, Examples) {
  EXPECT_DOUBLE_EQ(trace_metric(eye(2), eye(2), eye(2)), 2.0);
  EXPECT_DOUBLE_EQ(trace_metric(eye(2), m2(0, 1, 0, 0), m2(0, 0, 1, 0)), 1.0);
  EXPECT_DOUBLE_EQ(trace_metric(MatrixXd(2 * eye(2)), eye(2), eye(2)), 0.5);
  EXPECT_DOUBLE_EQ(trace_metric(eye(2), m2(0, 1, 0, 0), m2(0, 1, 0, 0)), 0.0);
}

TEST(TraceMetric, SymmetricBilinear) {
  MatrixSampler rng(1);
  for (int c = 0; c < 30; ++c) {
    const int n = 2 + c % 3;
    const MatrixXd a = rng.invertible(n);
    const MatrixXd v = rng.any(n), v2 = rng.any(n), w = rng.any(n);
    const double s = rng.uniform();
    EXPECT_NEAR(trace_metric(a, v, w), trace_metric(a, w, v), 1e-10);
    EXPECT_NEAR(trace_metric(a, MatrixXd(s * v + v2), w),
                s * trace_metric(a, v, w) + trace_metric(a, v2, w), 1e-10);
  }
}

TEST(TraceMetric, ErrorPaths) {
  EXPECT_EQ(code_of([] { trace_metric(m2(1, 1, 1, 1), eye(2), eye(2)); }), ErrorCode::Singular);
  EXPECT_EQ(code_of([] { trace_metric(eye(2), eye(3), eye(2)); }), ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([] { trace_metric(MatrixXd(2, 3), eye(2), eye(2)); }), ErrorCode::NotSquare);
  MatrixXd bad = eye(2);
  bad(0, 1) = std::nan("");
  EXPECT_EQ(code_of([&] { trace_metric(bad, eye(2), eye(2)); }), ErrorCode::NonFinite);
}

TEST(Gram, MatchesMetricOnCoordinates) {
  MatrixSampler rng(2);
  const MatrixXd a = rng.invertible(3);
  const MatrixXd g = metric_gram(a);
  for (int i = 0; i < 9; ++i) {
    for (int j = 0; j < 9; ++j) {
      EXPECT_NEAR(g(i, j),
                  trace_metric(a, coordinate_basis<double>(3, i), coordinate_basis<double>(3, j)),
                  1e-12);
    }
  }
}

TEST(Signature, Examples) {
  EXPECT_EQ(signature_at(eye(2)), (MetricSignature{3, 1}));
  EXPECT_EQ(signature_at(eye(3)), (MetricSignature{6, 3}));
  MatrixSampler rng(3);
  EXPECT_EQ(signature_at(rng.invertible(2)), (MetricSignature{3, 1}));
}

TEST(Signature, ConstantOnRandomPoints) {
  MatrixSampler rng(4);
  for (int n = 2; n <= 4; ++n) {
    for (int c = 0; c < 100; ++c) EXPECT_EQ(signature_at(rng.invertible(n)), expected_signature(n));
  }
}

TEST(Signature, SplitAtIdentity) {
  // Symmetric directions are space-like, skew ones time-like, and the two are orthogonal.
  const int n = 3;
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<MatrixXd> sym, skew;
  for (int i = 0; i < n; ++i) sym.push_back(unit_matrix<double>(n, i, i));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      sym.push_back(r * (unit_matrix<double>(n, i, j) + unit_matrix<double>(n, j, i)));
      skew.push_back(r * (unit_matrix<double>(n, i, j) - unit_matrix<double>(n, j, i)));
    }
  }
  for (std::size_t a = 0; a < sym.size(); ++a) {
    for (std::size_t b = 0; b < sym.size(); ++b) {
      EXPECT_NEAR(trace_metric(eye(n), sym[a], sym[b]), a == b ? 1.0 : 0.0, 1e-15);
    }
    for (const auto& s : skew) EXPECT_NEAR(trace_metric(eye(n), sym[a], s), 0.0, 1e-15);
  }
  for (std::size_t a = 0; a < skew.size(); ++a) {
    for (std::size_t b = 0; b < skew.size(); ++b) {
      EXPECT_NEAR(trace_metric(eye(n), skew[a], skew[b]), a == b ? -1.0 : 0.0, 1e-15);
    }
  }
}

TEST(Isometry, ApplyExamples) {
  MatrixSampler rng(5);
  const MatrixXd a = rng.invertible(3);
  const MatrixXd g = rng.invertible(3);
  EXPECT_LT((apply_isometry<double>(iso::PointSymmetry<double>{a}, a) - a).norm(), 1e-12);
  EXPECT_LT((apply_isometry<double>(iso::Inversion{}, m2(2, 0, 0, 4)) - m2(0.5, 0, 0, 0.25)).norm(),
            1e-15);
  EXPECT_LT((apply_isometry<double>(iso::Congruence<double>{g}, eye(3)) - g.transpose() * g).norm(),
            1e-15);
  EXPECT_LT((apply_isometry<double>(iso::Conjugate<double>{g}, a) - g.inverse() * a * g).norm(),
            1e-12);
}

TEST(Isometry, PushforwardExamples) {
  MatrixSampler rng(6);
  const MatrixXd a = rng.invertible(3);
  const MatrixXd v = rng.any(3);
  const MatrixXd g = rng.invertible(3);
  EXPECT_LT((pushforward<double>(iso::Inversion{}, eye(3), v) + v).norm(), 1e-15);
  EXPECT_LT((pushforward<double>(iso::PointSymmetry<double>{a}, a, v) + v).norm(), 1e-12);
  EXPECT_LT((pushforward<double>(iso::LeftTranslate<double>{g}, a, v) - g * v).norm(), 1e-15);
}

TEST(Isometry, PushforwardIsTheDifferential) {
  MatrixSampler rng(7);
  const MatrixXd a = rng.invertible(3);
  const MatrixXd v = rng.any(3);
  const double h = 1e-6;
  for (const auto& f : all_maps(rng.invertible(3))) {
    const MatrixXd fd =
        (apply_isometry(f, MatrixXd(a + h * v)) - apply_isometry(f, MatrixXd(a - h * v))) / (2 * h);
    const MatrixXd df = pushforward(f, a, v);
    EXPECT_LT((fd - df).norm(), 1e-6 * std::max(1.0, df.norm())) << isometry_name(f);
  }
}

TEST(Isometry, PreservesMetric) {
  MatrixSampler rng(8);
  for (int c = 0; c < 50; ++c) {
    const int n = 2 + c % 3;
    const MatrixXd a = rng.invertible(n);
    const MatrixXd v = rng.any(n), w = rng.any(n);
    const double base = trace_metric(a, v, w);
    for (const auto& f : all_maps(rng.invertible(n))) {
      const double moved = trace_metric(apply_isometry(f, a), pushforward(f, a, v), pushforward(f, a, w));
      EXPECT_LE(std::abs(moved - base), 1e-9 * std::max(1.0, std::abs(base))) << isometry_name(f);
    }
  }
}

TEST(Isometry, SingularParameter) {
  const IsometryMap<double> f = iso::LeftTranslate<double>{m2(1, 1, 1, 1)};
  EXPECT_EQ(code_of([&] { apply_isometry(f, eye(2)); }), ErrorCode::Singular);
  EXPECT_EQ(code_of([] { apply_isometry<double>(iso::Inversion{}, m2(1, 1, 1, 1)); }),
            ErrorCode::Singular);
  EXPECT_EQ(isometry_name(f), "left-translate");
}

TEST(SlTangent, Examples) {
  EXPECT_LT(sl_tangent_project(eye(2), eye(2)).norm(), 1e-15);
  EXPECT_EQ(sl_tangent_project(eye(2), m2(0, 1, 0, 0)), m2(0, 1, 0, 0));
  EXPECT_EQ(sl_tangent_project(eye(2), m2(2, 0, 0, 0)), m2(1, 0, 0, -1));
}

TEST(SlTangent, TracelessAndIdempotent) {
  MatrixSampler rng(9);
  for (int c = 0; c < 20; ++c) {
    const int n = 2 + c % 4;
    const MatrixXd k = rng.invertible(n);
    const MatrixXd p = sl_tangent_project(k, rng.any(n));
    EXPECT_NEAR((k.inverse() * p).trace(), 0.0, 1e-12);
    EXPECT_LT((sl_tangent_project(k, p) - p).norm(), 1e-12);
    // g_K-orthogonal to the normal direction K
    EXPECT_NEAR(trace_metric(k, p, k), 0.0, 1e-12);
  }
}

TEST(Leaf, Examples) {
  EXPECT_DOUBLE_EQ(leaf_of(eye(2)), 1.0);
  EXPECT_DOUBLE_EQ(leaf_of(m2(2, 0, 0, 3)), 6.0);
  EXPECT_DOUBLE_EQ(leaf_of(m2(-1, 0, 0, 1)), -1.0);
  EXPECT_EQ(code_of([] { leaf_of(m2(1, 2, 2, 4)); }), ErrorCode::Singular);
}

TEST(Leaf, BasePointAndUnitLeaf) {
  for (double c : {-8.0, -0.5, 0.25, 3.0}) {
    const MatrixXd p0 = leaf_base_point(c, 3);
    EXPECT_NEAR(p0.determinant(), c, 1e-12);
    EXPECT_EQ(p0(0, 0) < 0, c < 0);
  }
  MatrixSampler rng(10);
  for (int c = 0; c < 10; ++c) {
    const MatrixXd q = rng.invertible(3);
    EXPECT_NEAR(leaf_of(to_unit_leaf(q)), 1.0, 1e-12);
  }
}

TEST(Product, ForwardExamples) {
  EXPECT_EQ(product_forward(ProductPoint<double>(eye(2), 0.0)), eye(2));
  EXPECT_LT((product_forward(ProductPoint<double>(eye(2), std::sqrt(2.0))) - std::exp(1.0) * eye(2))
                .norm(),
            1e-14);
  EXPECT_EQ(product_forward(ProductPoint<double>(m2(2, 0, 0, 0.5), 0.0)), m2(2, 0, 0, 0.5));
}

TEST(Product, InverseExamples) {
  auto p = product_inverse(eye(2));
  EXPECT_LT((p.sl_part() - eye(2)).norm(), 1e-15);
  EXPECT_EQ(p.line_part(), 0.0);
  p = product_inverse(MatrixXd(std::exp(1.0) * eye(2)));
  EXPECT_LT((p.sl_part() - eye(2)).norm(), 1e-14);
  EXPECT_NEAR(p.line_part(), std::sqrt(2.0), 1e-14);
  p = product_inverse(m2(4, 0, 0, 1));
  EXPECT_LT((p.sl_part() - m2(2, 0, 0, 0.5)).norm(), 1e-14);
  EXPECT_NEAR(p.line_part(), std::log(4.0) / std::sqrt(2.0), 1e-14);
}

TEST(Product, ErrorPaths) {
  EXPECT_EQ(code_of([] { ProductPoint<double>(m2(2, 0, 0, 1), 0.0); }), ErrorCode::NotUnimodular);
  EXPECT_EQ(code_of([] { product_inverse(m2(-1, 0, 0, 1)); }), ErrorCode::NonPositiveDeterminant);
}

TEST(Product, RoundTripsAndPullback) {
  MatrixSampler rng(11);
  for (int c = 0; c < 50; ++c) {
    const int n = 2 + c % 3;
    const MatrixXd p = rng.unimodular(n);
    const double x = rng.uniform(-2, 2);
    const ProductPoint<double> pt(p, x);
    const MatrixXd q = product_forward(pt);
    EXPECT_GT(q.determinant(), 0.0);
    EXPECT_NEAR(q.determinant(), std::exp(x * std::sqrt(double(n))), 1e-9 * q.determinant());
    const auto back = product_inverse(q);
    EXPECT_LE((back.sl_part() - p).norm(), 1e-10);
    EXPECT_LE(std::abs(back.line_part() - x), 1e-10);
    const MatrixXd q2 = rng.positive_det(n);
    EXPECT_LE((product_forward(product_inverse(q2)) - q2).norm(), 1e-10);

    const MatrixXd m = sl_tangent_project(p, rng.any(n));
    const MatrixXd m_prime = sl_tangent_project(p, rng.any(n));
    const double a = rng.uniform(), a_prime = rng.uniform();
    const double pulled = trace_metric(q, product_pushforward(pt, m, a),
                                       product_pushforward(pt, m_prime, a_prime));
    const double split = trace_metric(p, m, m_prime) + a * a_prime;
    EXPECT_LE(std::abs(pulled - split), 1e-9 * std::max(1.0, std::abs(split)));
  }
}
