#pragma once

// Serialization: trigonometric polynomials and symbols as JSON, dense
// matrices as text, and atomic file output.
//
// TrigPoly JSON:
//   { "levels": d, "s": s, "t": t,
//     "coeffs": [ { "k": [k1, ..., kd], "re": [[...]], "im": [[...]] } ] }
// "im" may be omitted (all zero); a scalar polynomial may give "re"/"im" as numbers.
//
// GltSymbol JSON:
//   { "levels": d, "s": s, "t": t, "terms": [ { "a": "<expression>", "f": <TrigPoly> } ] }
//
// Matrix text: first line "rows cols", then one line per row of
// space-separated "re,im" pairs (17 significant digits).

#include <filesystem>
#include <string>

#include <json.hpp>

#include "gltkit/densela.hpp"
#include "gltkit/error.hpp"
#include "gltkit/symbols.hpp"

namespace gltkit {

/// Malformed JSON content; thrown as a DomainError so callers report it as a
/// configuration problem.
class FormatError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// File system failure.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json to_json(const TrigPoly& f);
TrigPoly trig_from_json(const nlohmann::json& j);

nlohmann::json to_json(const GltSymbol& kappa);
GltSymbol symbol_from_json(const nlohmann::json& j);

std::string matrix_to_text(const ComplexMatrix& a);
ComplexMatrix matrix_from_text(const std::string& text);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

/// Shortest decimal text that parses back to v.
std::string format_double(double v);

}  // namespace gltkit
