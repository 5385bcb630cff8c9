#include "tracegeo/cli/verify.hpp"

#include "tracegeo/christoffel.hpp"
#include "tracegeo/curvature.hpp"
#include "tracegeo/foliation.hpp"
#include "tracegeo/isometry.hpp"
#include "tracegeo/matcore.hpp"
#include "tracegeo/metric.hpp"
#include "tracegeo/random.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <utility>

namespace tracegeo::cli {

namespace {

using Labelled = std::vector<std::pair<std::string, MatrixXd>>;

class Recorder {
 public:
  explicit Recorder(std::string suite) : suite_(std::move(suite)) {}

  /// |got - expected| <= tol * max(1, scale)
  void close(const std::string& check, const Labelled& inputs, double expected, double got,
             double tol, double scale = 1.0) {
    if (std::abs(got - expected) <= tol * std::max(1.0, scale)) return;
    fail(check, inputs, expected, got);
  }

  void equal(const std::string& check, const Labelled& inputs, const std::string& expected,
             const std::string& got) {
    if (expected != got) fail(check, inputs, expected, got);
  }

  void fail(const std::string& check, const Labelled& inputs, json expected, json got) {
    json docs = json::array();
    for (const auto& [label, m] : inputs) docs.push_back(matrix_to_json(m, label));
    failures_.push_back({{"check", suite_ + "/" + check},
                         {"inputs", std::move(docs)},
                         {"expected", std::move(expected)},
                         {"got", std::move(got)}});
  }

  /// Runs one case; an unexpected library error is itself a failure.
  void guard(const std::string& check, const Labelled& inputs, const std::function<void()>& body) {
    try {
      body();
    } catch (const GeometryError& e) {
      fail(check, inputs, "no error", std::string(error_code_name(e.code())));
    }
  }

  json take() { return std::move(failures_); }

 private:
  std::string suite_;
  json failures_ = json::array();
};

double fro_product(std::initializer_list<MatrixXd> ms) {
  double s = 1.0;
  for (const auto& m : ms) s *= m.norm();
  return s;
}

std::string signature_text(const MetricSignature& s) {
  return "(" + std::to_string(s.positive) + "," + std::to_string(s.negative) + ")";
}

MatrixXd identity(int n) { return MatrixXd::Identity(n, n); }

void metric_suite(const VerifyOptions& o, MatrixSampler& rng, Recorder& rec) {
  const int n = o.n;
  for (int c = 0; c < o.cases; ++c) {
    const MatrixXd a = rng.invertible(n);
    const MatrixXd v = rng.any(n);
    const MatrixXd w = rng.any(n);
    const MatrixXd g = rng.invertible(n);
    const Labelled in{{"A", a}, {"V", v}, {"W", w}, {"G", g}};
    rec.guard("case", in, [&] {
      rec.equal("signature", in, signature_text(expected_signature(n)),
                signature_text(signature_at(a)));
      const MatrixXd a_inv = a.inverse();
      const double scale = fro_product({a_inv * v, a_inv * w});
      const double gvw = trace_metric(a, v, w);
      rec.close("symmetry", in, gvw, trace_metric(a, w, v), o.tol_assert, scale);

      const Eigen::Map<const Eigen::VectorXd> vv(v.data(), v.size());
      const Eigen::Map<const Eigen::VectorXd> wv(w.data(), w.size());
      rec.close("gram", in, gvw, vv.dot(metric_gram(a) * wv), o.tol_assert, scale);

      const std::array<IsometryMap<double>, 8> maps{
          iso::LeftTranslate<double>{g}, iso::RightTranslate<double>{g},
          iso::Conjugate<double>{g},     iso::Congruence<double>{g},
          iso::Inversion{},              iso::Transposition{},
          iso::Negation{},               iso::PointSymmetry<double>{g}};
      for (const auto& f : maps) {
        const MatrixXd fa = apply_isometry(f, a);
        const double got = trace_metric(fa, pushforward(f, a, v), pushforward(f, a, w));
        rec.close("isometry:" + std::string(isometry_name(f)), in, gvw, got, o.tol_assert, scale);
      }
    });
  }
}

void geodesic_suite(const VerifyOptions& o, MatrixSampler& rng, Recorder& rec) {
  const int n = o.n;
  for (int c = 0; c < o.cases; ++c) {
    const MatrixXd k = rng.invertible(n);
    const MatrixXd dir = rng.any(n);
    const MatrixXd x = rng.any(n);
    const MatrixXd y = rng.any(n);
    const Labelled in{{"K", k}, {"C", dir}, {"X", x}, {"Y", y}};
    rec.guard("case", in, [&] {
      const Geodesic<double> geo(k, dir);
      for (double t : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
        rec.close("residual", in, 0.0, geodesic_residual(geo, t, o.fd_step),
                  kFiniteDifferenceTolerance);
      }
      rec.close("initial-point", in, 0.0, (geo(0.0) - k).norm(), o.tol_assert);
      rec.close("velocity", in, 0.0,
                (geodesic_from_velocity(k, geo.velocity()).direction() - dir).norm(), o.tol_assert,
                dir.norm());

      // left-invariant fields: nabla_{KX}(KY) = K [X, Y] / 2
      const MatrixXd lhs = nabla(k, k * x, k * y, k * x * y);
      const MatrixXd rhs = 0.5 * k * commutator(x, y);
      rec.close("cartan-schouten", in, 0.0, (lhs - rhs).norm(), o.tol_assert,
                fro_product({k, x, y}));
    });

    const MatrixXd p0 = rng.spd(n);
    const MatrixXd p1 = rng.spd(n);
    const Labelled spd_in{{"K0", p0}, {"K1", p1}};
    rec.guard("spd-arc", spd_in, [&] {
      const auto cls = classify_arc(p0, p1, o.tol_cluster);
      rec.equal("spd-verdict", spd_in, "unique", std::string(verdict_name(cls.verdict)));
      if (cls.witness) {
        rec.close("spd-endpoint", spd_in, 0.0, ((*cls.witness)(1.0) - p1).norm(), o.tol_assert,
                  p1.norm());
      }
      // S = K^{1/2} Y K^{1/2} keeps the exponent bounded for ill-conditioned K.
      const MatrixXd root = fractional_power(p0, 0.5);
      MatrixXd s = root * rng.symmetric(n) * root;
      s = 0.5 * (s + s.transpose()).eval();
      const Geodesic<double> direct = geodesic_from_velocity(p0, s);
      rec.close("spd-closed-form", spd_in, 0.0, (spd_geodesic(p0, s, 0.7) - direct(0.7)).norm(),
                o.tol_assert, direct(0.7).norm());
    });

    const MatrixXd k1 = rng.invertible(n);
    MatrixXd k2 = rng.invertible(n);
    if ((k1.determinant() > 0) != (k2.determinant() > 0)) k2.row(0) *= -1.0;
    const Labelled pair{{"K1", k1}, {"K2", k2}};
    rec.guard("broken-arc", pair, [&] {
      const auto arc = broken_arc(k1, k2, o.tol_cluster);
      const double scale = std::max({k1.norm(), k2.norm(), arc.joint.norm()});
      rec.close("broken-start", pair, 0.0, (arc.first(0.0) - k1).norm(), o.tol_assert, scale);
      rec.close("broken-joint-in", pair, 0.0, (arc.first(1.0) - arc.joint).norm(), o.tol_assert,
                scale);
      rec.close("broken-joint-out", pair, 0.0, (arc.second(0.0) - arc.joint).norm(), o.tol_assert,
                scale);
      rec.close("broken-end", pair, 0.0, (arc.second(1.0) - k2).norm(), o.tol_assert, scale);
    });
  }
}

void curvature_suite(const VerifyOptions& o, MatrixSampler& rng, Recorder& rec) {
  const int n = o.n;
  const MatrixXd eye = identity(n);
  for (int c = 0; c < o.cases; ++c) {
    const MatrixXd k = rng.invertible(n);
    const MatrixXd x = rng.any(n);
    const MatrixXd y = rng.any(n);
    const MatrixXd z = rng.any(n);
    const MatrixXd w = rng.any(n);
    const Labelled in{{"K", k}, {"X", x}, {"Y", y}, {"Z", z}, {"W", w}};
    rec.guard("case", in, [&] {
      const MatrixXd k_inv = k.inverse();
      const double scale = fro_product({k_inv * x, k_inv * y, k_inv * z, k_inv * w});
      const double r = riemann_04(k, x, y, z, w);
      rec.close("antisymmetry-xy", in, -r, riemann_04(k, y, x, z, w), o.tol_assert, scale);
      rec.close("antisymmetry-zw", in, -r, riemann_04(k, x, y, w, z), o.tol_assert, scale);
      rec.close("pair-exchange", in, r, riemann_04(k, z, w, x, y), o.tol_assert, scale);
      rec.close("bianchi", in, 0.0,
                r + riemann_04(k, y, z, x, w) + riemann_04(k, z, x, y, w), o.tol_assert, scale);
      rec.close("compatibility", in, r, trace_metric(k, riemann_13(k, x, y, z), w), o.tol_assert,
                scale);
      rec.close("left-invariance", in, riemann_04(eye, x, y, z, w),
                riemann_04(k, k * x, k * y, k * z, k * w), o.tol_assert, fro_product({x, y, z, w}));

      const MatrixXd lie = 0.25 * k * commutator(commutator(x, y), z);
      rec.close("left-invariant-riemann", in, 0.0,
                (riemann_13(k, k * x, k * y, k * z) - lie).norm(), o.tol_assert,
                fro_product({k, x, y, z}));

      const double ric_scale = n * fro_product({k_inv * x, k_inv * y});
      rec.close("ricci-oracle", in, ricci(k, x, y), ricci_trace_oracle(k, x, y), o.tol_assert,
                ric_scale);
      rec.close("ricci-killing", in, -0.25 * cartan_killing(x, y), ricci(eye, x, y), o.tol_assert,
                n * fro_product({x, y}));
      rec.close("scalar", in, expected_scalar_curvature(n), scalar_curvature(k), o.tol_assert);

      const auto frame = orthonormal_frame(k);
      double worst = 0.0;
      for (std::size_t a = 0; a < frame.vectors.size(); ++a) {
        for (std::size_t b = 0; b < frame.vectors.size(); ++b) {
          const double want = a == b ? frame.sign(a) : 0.0;
          worst = std::max(worst,
                           std::abs(trace_metric(k, frame.vectors[a], frame.vectors[b]) - want));
        }
      }
      rec.close("frame-orthonormal", in, 0.0, worst, o.tol_assert);

      try {
        const double s = sectional(k, x, y);
        const double alpha = rng.uniform(), beta = rng.uniform();
        const double gamma = rng.uniform(), delta = rng.uniform() + 2.0;
        const double s2 = sectional(k, alpha * x + beta * y, gamma * x + delta * y);
        rec.close("sectional-basis", in, s, s2, o.tol_assert, std::abs(s));
      } catch (const GeometryError& e) {
        if (e.code() != ErrorCode::DegenerateSection) throw;
      }
    });
  }

  // Finite-difference oracle, restricted to small orders.
  if (n > 3) return;
  const int fd_cases = std::min(o.cases, 5);
  for (int c = 0; c < fd_cases; ++c) {
    const MatrixXd p = c == 0 ? eye : MatrixXd(expm(0.5 * rng.any(n)));
    const MatrixXd x = rng.any(n);
    const MatrixXd y = rng.any(n);
    const Labelled in{{"P", p}, {"X", x}, {"Y", y}};
    rec.guard("christoffel", in, [&] {
      const auto closed = christoffel_closed_form(p);
      const auto fd = christoffel_finite_difference(p, o.fd_step);
      rec.close("christoffel-fd", in, 0.0, closed.max_abs_difference(fd),
                kFiniteDifferenceTolerance);
      rec.close("christoffel-nabla", in, 0.0,
                (closed.contract(x, y) - nabla(p, x, y, MatrixXd::Zero(n, n))).norm(),
                kFiniteDifferenceTolerance);
    });
  }
}

void foliation_suite(const VerifyOptions& o, MatrixSampler& rng, Recorder& rec) {
  const int n = o.n;
  for (int c = 0; c < o.cases; ++c) {
    const MatrixXd k = rng.invertible(n);
    const MatrixXd x = sl_tangent_project(k, rng.any(n));
    const MatrixXd y = sl_tangent_project(k, rng.any(n));
    MatrixXd dir = rng.any(n);
    dir.diagonal().array() -= dir.trace() / n;
    const Labelled in{{"K", k}, {"X", x}, {"Y", y}, {"C", dir}};
    rec.guard("case", in, [&] {
      const MatrixXd k_inv = k.inverse();
      rec.close("tangent-x", in, 0.0, (k_inv * x).trace(), o.tol_assert, (k_inv * x).norm());
      rec.close("tangent-y", in, 0.0, (k_inv * y).trace(), o.tol_assert, (k_inv * y).norm());
      const auto [ric, rhs] = sl_einstein_check(k, x, y);
      rec.close("einstein", in, rhs, ric, o.tol_assert, n * fro_product({k_inv * x, k_inv * y}));

      const double c0 = leaf_of(k);
      const Geodesic<double> geo(k, dir);
      double worst = 0.0;
      for (int i = 0; i <= 8; ++i) {
        const double t = -2.0 + 0.5 * i;
        worst = std::max(worst, std::abs(leaf_of(geo(t)) - c0));
      }
      rec.close("leaf-preserved", in, 0.0, worst, o.tol_assert, std::abs(c0));
      rec.close("unit-leaf", in, 1.0, leaf_of(to_unit_leaf(k)), o.tol_assert);
    });
  }
}

void product_suite(const VerifyOptions& o, MatrixSampler& rng, Recorder& rec) {
  const int n = o.n;
  for (int c = 0; c < o.cases; ++c) {
    const MatrixXd p = rng.unimodular(n);
    const double line = rng.uniform(-2.0, 2.0);
    const MatrixXd q = rng.positive_det(n);
    const MatrixXd m1 = sl_tangent_project(p, rng.any(n));
    const MatrixXd m2 = sl_tangent_project(p, rng.any(n));
    const double a1 = rng.uniform(), a2 = rng.uniform();
    const Labelled in{{"P", p}, {"Q", q}, {"M1", m1}, {"M2", m2}};
    rec.guard("case", in, [&] {
      const ProductPoint<double> pt(p, line);
      const MatrixXd fp = product_forward(pt);
      const auto back = product_inverse(fp);
      rec.close("inverse-after-forward", in, 0.0,
                (back.sl_part() - p).norm() + std::abs(back.line_part() - line), o.tol_assert,
                p.norm());
      rec.close("forward-after-inverse", in, 0.0, (product_forward(product_inverse(q)) - q).norm(),
                o.tol_assert, q.norm());

      const double pulled = trace_metric(fp, product_pushforward(pt, m1, a1),
                                         product_pushforward(pt, m2, a2));
      const double split = trace_metric(p, m1, m2) + a1 * a2;
      const MatrixXd p_inv = p.inverse();
      rec.close("pullback-metric", in, split, pulled, o.tol_assert,
                fro_product({p_inv * m1, p_inv * m2}) + 1.0);
    });
  }
}

using SuiteFn = void (*)(const VerifyOptions&, MatrixSampler&, Recorder&);

const std::map<std::string, SuiteFn>& suite_table() {
  static const std::map<std::string, SuiteFn> table{{"metric", metric_suite},
                                                    {"geodesic", geodesic_suite},
                                                    {"curvature", curvature_suite},
                                                    {"foliation", foliation_suite},
                                                    {"product", product_suite}};
  return table;
}

json run_one(const std::string& name, const VerifyOptions& o) {
  MatrixSampler rng(o.seed);
  Recorder rec(name);
  suite_table().at(name)(o, rng, rec);
  return rec.take();
}

}  // namespace

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names{"metric", "geodesic", "curvature", "foliation",
                                              "product"};
  return names;
}

json run_verify(const VerifyOptions& o) {
  if (o.n < 2 || o.n > 6) throw CliError("usage", "--n must lie in 2..6");
  if (o.cases < 1) throw CliError("usage", "--cases must be positive");
  if (!(o.fd_step > 0.0)) throw CliError("usage", "--fd-step must be positive");

  json report;
  report["suite"] = o.suite;
  json failures = json::array();
  int cases = 0;
  if (o.suite == "all") {
    report["suites"] = verify_suite_names();
    for (const auto& name : verify_suite_names()) {
      for (auto& f : run_one(name, o)) failures.push_back(std::move(f));
      cases += o.cases;
    }
  } else if (suite_table().count(o.suite) != 0) {
    failures = run_one(o.suite, o);
    cases = o.cases;
  } else {
    throw CliError("usage", "unknown suite " + o.suite);
  }
  report["cases"] = cases;
  report["failures"] = std::move(failures);
  report["seed"] = o.seed;
  report["n"] = o.n;
  report["tolerances"] = {{"assert", o.tol_assert},
                          {"cluster", o.tol_cluster},
                          {"fd_step", o.fd_step},
                          {"finite_difference", kFiniteDifferenceTolerance}};
  return report;
}

}  // namespace tracegeo::cli
