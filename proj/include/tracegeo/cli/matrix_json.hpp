#pragma once

#include "tracegeo/arcs.hpp"
#include "tracegeo/core.hpp"
#include "tracegeo/geodesic.hpp"
#include "tracegeo/matcore/spectral_profile.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

namespace tracegeo::cli {

using json = nlohmann::json;

/// Input/usage failure in the front end; `code` becomes the `error` field.
class CliError : public std::runtime_error {
 public:
  CliError(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  [[nodiscard]] const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// {"n": int, "data": [[row], ...], "label": optional string}, row-major.
struct MatrixDocument {
  MatrixXd matrix;
  std::optional<std::string> label;
};

MatrixDocument matrix_from_json(const json& j);
json matrix_to_json(const MatrixXd& a, const std::optional<std::string>& label = std::nullopt);

/// Reads a document from a file path, from inline JSON (text starting with
/// '{'), or from `in` when the source is "-".
MatrixDocument load_matrix(const std::string& source, std::istream& in);

json profile_to_json(const SpectralProfile<double>& profile);
json geodesic_to_json(const Geodesic<double>& geo);

}  // namespace tracegeo::cli
