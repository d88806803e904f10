#include "subent/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace subent {

namespace {

using nlohmann::json;

complex parse_complex(const json& pair) {
  if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
    fail(ErrorCode::ParseError, "expected [re, im], got " + pair.dump());
  }
  return {pair[0].get<double>(), pair[1].get<double>()};
}

json complex_pair(complex z) { return json::array({z.real(), z.imag()}); }

json parse_text(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ParseError, e.what());
  }
}

}  // namespace

DensityMatrix parse_state_json(std::string_view text) {
  const json doc = parse_text(text);
  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("entries")) {
    fail(ErrorCode::ParseError, "state needs \"dim\" and \"entries\"");
  }
  if (!doc["dim"].is_number_unsigned() || doc["dim"].get<std::size_t>() == 0) {
    fail(ErrorCode::ParseError, "\"dim\" must be a positive integer");
  }
  const auto d = doc["dim"].get<std::size_t>();
  const json& entries = doc["entries"];
  if (!entries.is_array() || entries.size() != d * d) {
    fail(ErrorCode::ParseError, "\"entries\" must hold dim^2 = " + std::to_string(d * d) + " pairs");
  }
  const auto n = static_cast<Eigen::Index>(d);
  Matrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = parse_complex(entries[static_cast<std::size_t>(r * n + c)]);
  }
  return validate_density(m);
}

DensityMatrix read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_state_json(buf.str());
}

std::string state_to_json(const DensityMatrix& rho) {
  json entries = json::array();
  const Matrix& m = rho.matrix();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) entries.push_back(complex_pair(m(r, c)));
  }
  return json{{"dim", rho.dim()}, {"entries", std::move(entries)}}.dump();
}

ExtremalDecomposition parse_decomposition_json(std::string_view text) {
  const json doc = parse_text(text);
  if (!doc.is_object() || !doc.contains("weights") || !doc.contains("vectors") ||
      !doc["weights"].is_array() || !doc["vectors"].is_array()) {
    fail(ErrorCode::ParseError, "decomposition needs \"weights\" and \"vectors\" arrays");
  }
  std::vector<double> weights;
  for (const json& w : doc["weights"]) {
    if (!w.is_number()) fail(ErrorCode::ParseError, "weight is not a number");
    weights.push_back(w.get<double>());
  }
  std::vector<StateVector> vectors;
  for (const json& v : doc["vectors"]) {
    if (!v.is_array() || v.empty()) fail(ErrorCode::ParseError, "vector must be a nonempty array");
    Vector amp(static_cast<Eigen::Index>(v.size()));
    for (std::size_t k = 0; k < v.size(); ++k) amp(static_cast<Eigen::Index>(k)) = parse_complex(v[k]);
    vectors.emplace_back(amp);
  }
  return ExtremalDecomposition(std::move(weights), std::move(vectors));
}

std::string decomposition_to_json(const ExtremalDecomposition& dec) {
  json vectors = json::array();
  for (const StateVector& v : dec.decomposers()) {
    json amps = json::array();
    for (Eigen::Index k = 0; k < v.amplitudes().size(); ++k) amps.push_back(complex_pair(v.amplitudes()(k)));
    vectors.push_back(std::move(amps));
  }
  return json{{"weights", dec.weights()}, {"vectors", std::move(vectors)}}.dump();
}

}  // namespace subent
