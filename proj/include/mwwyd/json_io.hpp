#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "mwwyd/bounds.hpp"
#include "mwwyd/cmatrix.hpp"
#include "mwwyd/quantum.hpp"

// JSON formats:
//   matrix  = [[[re, im], ...], ...]           array of rows, rows of pairs
//   channel = {"name": string, "kraus": [matrix, ...]}
//   state   = {"rho": matrix}  or  {"bloch": [x, y, z]}
// Errors are ParseError with the offending entry path (e.g. kraus[0][1][0]).
namespace mwwyd::json_io {

using nlohmann::json;

ComplexMatrix parse_matrix(const json& value, const std::string& path = "$");
KrausChannel parse_channel(const json& value);
DensityMatrix parse_state(const json& value);

// Parse + validate a file. Syntax errors report file:line:column; validation
// errors are prefixed with the file name.
KrausChannel load_channel(const std::filesystem::path& file);
DensityMatrix load_state(const std::filesystem::path& file);

json matrix_to_json(const ComplexMatrix& m);
json channel_to_json(const KrausChannel& ch);
json report_to_json(const BoundReport& report);

}  // namespace mwwyd::json_io
