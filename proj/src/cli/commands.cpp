#include "tracegeo/cli/commands.hpp"

#include "tracegeo/cli/matrix_json.hpp"
#include "tracegeo/cli/verify.hpp"
#include "tracegeo/tracegeo.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <istream>
#include <ostream>

namespace tracegeo::cli {

namespace {

struct Tolerances {
  double cluster = 1e-8;
  double assert_ = 1e-8;
  double fd_step = 1e-4;
};

double env_tolerance(double fallback) {
  const char* raw = std::getenv("TRACEGEO_TOL");
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  const double v = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
    throw CliError("usage", "TRACEGEO_TOL must be a positive number");
  }
  return v;
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

json error_json(const std::string& code, const std::string& message) {
  return {{"error", code}, {"message", message}};
}

MatrixXd require(const std::string& source, const char* flag, std::istream& in) {
  if (source.empty()) throw CliError("usage", std::string(flag) + " is required");
  return load_matrix(source, in).matrix;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Semi-Riemannian geometry of GL(n) under the trace metric", "tracegeo"};
  app.require_subcommand(1);
  app.fallthrough();

  Tolerances tol;
  app.add_option("--tol-cluster", tol.cluster, "eigenvalue clustering / rank tolerance")
      ->capture_default_str();
  auto* tol_assert_opt =
      app.add_option("--tol-assert", tol.assert_, "assertion tolerance (env TRACEGEO_TOL)")
          ->capture_default_str();
  app.add_option("--fd-step", tol.fd_step, "finite-difference step")->capture_default_str();

  std::string at, x, y, z, w, k0, k1, k, c, velocity, kind;
  double t_from = 0.0, t_to = 1.0;
  int samples = 11;
  double classify_tol = -1.0;
  VerifyOptions vopt;
  int exit_code = 0;
  std::function<void()> action;

  auto* metric = app.add_subcommand("metric", "g_A(V, W) = tr(A^-1 V A^-1 W)");
  metric->add_option("--at", at)->required();
  metric->add_option("--x", x)->required();
  metric->add_option("--y", y)->required();
  metric->callback([&] {
    action = [&] {
      const double v = trace_metric(require(at, "--at", in), require(x, "--x", in),
                                    require(y, "--y", in));
      emit(out, {{"value", v}});
    };
  });

  auto* signature = app.add_subcommand("signature", "metric signature at a point");
  signature->add_option("--at", at)->required();
  signature->callback([&] {
    action = [&] {
      const MatrixXd a = require(at, "--at", in);
      const MetricSignature s = signature_at(a);
      emit(out, {{"n", a.rows()}, {"positive", s.positive}, {"negative", s.negative}});
    };
  });

  auto* classify = app.add_subcommand("classify", "classify geodesic arcs from K0 to K1");
  classify->add_option("--k0", k0)->required();
  classify->add_option("--k1", k1)->required();
  classify->add_option("--tol", classify_tol, "clustering tolerance (default --tol-cluster)");
  classify->callback([&] {
    action = [&] {
      const double t = classify_tol > 0.0 ? classify_tol : tol.cluster;
      const auto cls = classify_arc(require(k0, "--k0", in), require(k1, "--k1", in), t);
      json j = {{"verdict", verdict_name(cls.verdict)}, {"profile", profile_to_json(cls.profile)}};
      if (cls.witness) j["witness"] = geodesic_to_json(*cls.witness);
      emit(out, j);
      if (cls.verdict == ArcVerdict::NoArc) exit_code = 2;
    };
  });

  auto* geodesic = app.add_subcommand("geodesic", "sample t -> K exp(t C)");
  geodesic->add_option("--k", k)->required();
  auto* c_opt = geodesic->add_option("--c", c, "direction C");
  auto* v_opt = geodesic->add_option("--velocity", velocity, "initial velocity S = K C");
  c_opt->excludes(v_opt);
  geodesic->add_option("--t-from", t_from)->capture_default_str();
  geodesic->add_option("--t-to", t_to)->capture_default_str();
  geodesic->add_option("--samples", samples)->capture_default_str()->check(CLI::PositiveNumber);
  geodesic->callback([&] {
    action = [&] {
      const MatrixXd base = require(k, "--k", in);
      if (c.empty() == velocity.empty()) {
        throw CliError("usage", "exactly one of --c and --velocity is required");
      }
      const Geodesic<double> geo = c.empty()
                                       ? geodesic_from_velocity(base, require(velocity, "--velocity", in))
                                       : Geodesic<double>(base, require(c, "--c", in));
      json points = json::array();
      for (int i = 0; i < samples; ++i) {
        const double t =
            samples == 1 ? t_from : t_from + (t_to - t_from) * i / static_cast<double>(samples - 1);
        const MatrixXd p = geodesic_eval(geo, t);
        json doc = matrix_to_json(p);
        doc["t"] = t;
        doc["det"] = p.determinant();
        points.push_back(std::move(doc));
      }
      emit(out, points);
    };
  });

  auto* arc = app.add_subcommand("arc", "the unique geodesic arc from K0 to K1");
  arc->add_option("--k0", k0)->required();
  arc->add_option("--k1", k1)->required();
  arc->add_option("--tol", classify_tol, "clustering tolerance (default --tol-cluster)");
  arc->callback([&] {
    action = [&] {
      const double t = classify_tol > 0.0 ? classify_tol : tol.cluster;
      const MatrixXd a = require(k0, "--k0", in);
      const MatrixXd b = require(k1, "--k1", in);
      const Geodesic<double> geo = unique_arc(a, b, t);
      json j = geodesic_to_json(geo);
      j["endpoint_error"] = (geo(1.0) - b).norm();
      emit(out, j);
    };
  });

  auto* broken = app.add_subcommand("broken-arc", "two-leg arc K1 -> Z -> K2");
  broken->add_option("--k1", k0)->required();
  broken->add_option("--k2", k1)->required();
  broken->callback([&] {
    action = [&] {
      const auto b = broken_arc(require(k0, "--k1", in), require(k1, "--k2", in), tol.cluster);
      emit(out, {{"first", geodesic_to_json(b.first)},
                 {"second", geodesic_to_json(b.second)},
                 {"joint", matrix_to_json(b.joint)}});
    };
  });

  auto* curvature = app.add_subcommand("curvature", "curvature at a point");
  curvature->add_option("--at", at)->required();
  curvature->add_option("--x", x);
  curvature->add_option("--y", y);
  curvature->add_option("--z", z);
  curvature->add_option("--w", w);
  curvature->add_option("--kind", kind)
      ->required()
      ->check(CLI::IsMember({"sectional", "riemann04", "ricci", "scalar"}));
  curvature->callback([&] {
    action = [&] {
      const MatrixXd base = require(at, "--at", in);
      double v = 0.0;
      if (kind == "scalar") {
        v = scalar_curvature(base);
      } else if (kind == "sectional") {
        v = sectional(base, require(x, "--x", in), require(y, "--y", in));
      } else if (kind == "ricci") {
        v = ricci(base, require(x, "--x", in), require(y, "--y", in));
      } else {
        v = riemann_04(base, require(x, "--x", in), require(y, "--y", in), require(z, "--z", in),
                       require(w, "--w", in));
      }
      emit(out, {{"value", v}});
    };
  });

  auto* verify = app.add_subcommand("verify", "seeded invariant suites");
  verify->add_option("--suite", vopt.suite)
      ->capture_default_str()
      ->check(CLI::IsMember({"metric", "geodesic", "curvature", "foliation", "product", "all"}));
  verify->add_option("--n", vopt.n)->capture_default_str()->check(CLI::Range(2, 6));
  verify->add_option("--seed", vopt.seed)->capture_default_str();
  verify->add_option("--cases", vopt.cases)->capture_default_str()->check(CLI::PositiveNumber);
  verify->callback([&] {
    action = [&] {
      vopt.tol_assert = tol.assert_;
      vopt.tol_cluster = tol.cluster;
      vopt.fd_step = tol.fd_step;
      const json report = run_verify(vopt);
      emit(out, report);
      if (!report.at("failures").empty()) exit_code = 1;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (tol_assert_opt->count() == 0) tol.assert_ = env_tolerance(tol.assert_);
    if (!(tol.cluster > 0.0) || !(tol.assert_ > 0.0) || !(tol.fd_step > 0.0)) {
      throw CliError("usage", "tolerances and --fd-step must be positive");
    }
    if (action) action();
    return exit_code;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    emit(err, error_json("usage", e.what()));
  } catch (const GeometryError& e) {
    emit(err, error_json(std::string(error_code_name(e.code())), e.what()));
  } catch (const CliError& e) {
    emit(err, error_json(e.code(), e.what()));
  } catch (const json::exception& e) {
    emit(err, error_json("parse", e.what()));
  } catch (const std::exception& e) {
    emit(err, error_json("internal", e.what()));
  }
  return 1;
}

}  // namespace tracegeo::cli
