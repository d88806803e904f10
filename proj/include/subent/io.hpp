#pragma once

// JSON forms of states and decompositions.
//
//   state:          {"dim": d, "entries": [[re, im], ...]}   d^2 pairs, row-major
//   decomposition:  {"weights": [...], "vectors": [[[re, im], ...], ...]}

#include <string>
#include <string_view>

#include "subent/decomp.hpp"
#include "subent/qstate.hpp"

namespace subent {

/// Parses and validates a state. Malformed JSON or a wrong entry count is
/// ParseError; physical checks are those of validate_density.
DensityMatrix parse_state_json(std::string_view text);
DensityMatrix read_state_file(const std::string& path);
std::string state_to_json(const DensityMatrix& rho);

ExtremalDecomposition parse_decomposition_json(std::string_view text);
std::string decomposition_to_json(const ExtremalDecomposition& dec);

}  // namespace subent
