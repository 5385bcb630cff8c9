#include "tracegeo/cli/matrix_json.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <sstream>

namespace tracegeo::cli {

MatrixDocument matrix_from_json(const json& j) {
  if (!j.is_object()) throw CliError("parse", "matrix document must be a JSON object");
  if (!j.contains("n") || !j.at("n").is_number_integer()) {
    throw CliError("parse", "matrix document needs an integer field \"n\"");
  }
  const auto n = j.at("n").get<long long>();
  if (n <= 0) throw CliError("parse", "\"n\" must be positive");
  if (!j.contains("data") || !j.at("data").is_array() ||
      j.at("data").size() != static_cast<std::size_t>(n)) {
    throw CliError("parse", "\"data\" must be an array of n rows");
  }
  MatrixDocument doc;
  doc.matrix.resize(n, n);
  for (long long i = 0; i < n; ++i) {
    const json& row = j.at("data").at(i);
    if (!row.is_array() || row.size() != static_cast<std::size_t>(n)) {
      throw CliError("parse", "row " + std::to_string(i) + " must have n entries");
    }
    for (long long k = 0; k < n; ++k) {
      if (!row.at(k).is_number()) {
        throw CliError("parse", "matrix entries must be numbers");
      }
      const double v = row.at(k).get<double>();
      if (!std::isfinite(v)) throw CliError("parse", "matrix entries must be finite");
      doc.matrix(i, k) = v;
    }
  }
  if (j.contains("label")) {
    if (!j.at("label").is_string()) throw CliError("parse", "\"label\" must be a string");
    doc.label = j.at("label").get<std::string>();
  }
  return doc;
}

json matrix_to_json(const MatrixXd& a, const std::optional<std::string>& label) {
  json data = json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < a.cols(); ++k) row.push_back(a(i, k));
    data.push_back(std::move(row));
  }
  json out = {{"n", a.rows()}, {"data", std::move(data)}};
  if (label) out["label"] = *label;
  return out;
}

namespace {

std::string read_all(std::istream& in) {
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

MatrixDocument load_matrix(const std::string& source, std::istream& in) {
  std::string text;
  const auto first = std::find_if_not(source.begin(), source.end(),
                                      [](unsigned char c) { return std::isspace(c) != 0; });
  if (source == "-") {
    text = read_all(in);
  } else if (first != source.end() && *first == '{') {
    text = source;
  } else {
    std::ifstream file(source);
    if (!file) throw CliError("io", "cannot open " + source);
    text = read_all(file);
  }
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw CliError("parse", e.what());
  }
  return matrix_from_json(j);
}

json profile_to_json(const SpectralProfile<double>& profile) {
  json clusters = json::array();
  for (const auto& c : profile.clusters) {
    clusters.push_back({{"eigenvalue", {{"re", c.eigenvalue.real()}, {"im", c.eigenvalue.imag()}}},
                        {"block_sizes", c.block_sizes}});
  }
  return {{"tolerance", profile.tolerance}, {"clusters", std::move(clusters)}};
}

json geodesic_to_json(const Geodesic<double>& geo) {
  return {{"k", matrix_to_json(geo.base_point())}, {"c", matrix_to_json(geo.direction())}};
}

}  // namespace tracegeo::cli
