#pragma once

#include "tracegeo/cli/matrix_json.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tracegeo::cli {

struct VerifyOptions {
  std::string suite = "all";
  int n = 3;
  std::uint64_t seed = 0;
  int cases = 20;
  double tol_assert = 1e-8;
  double tol_cluster = 1e-8;
  double fd_step = 1e-4;
};

/// Residual and Christoffel checks compare finite differences against
/// closed forms; their bound is fixed rather than tied to tol_assert.
inline constexpr double kFiniteDifferenceTolerance = 1e-5;

const std::vector<std::string>& verify_suite_names();

/// Runs one suite (or all of them, each with the same seed) and returns the
/// report {suite, cases, failures, seed, tolerances[, suites]}.
json run_verify(const VerifyOptions& options);

}  // namespace tracegeo::cli
