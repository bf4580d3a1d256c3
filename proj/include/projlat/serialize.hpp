#pragma once

// JSON fixtures. A matrix instance is
//   {"block_dims": [n_1, ...], "blocks": [[[re, im], ...], ...]}
// with each block flattened row-major into n_k² pairs.

#include <string>

#include <json.hpp>

#include "projlat/dye.hpp"
#include "projlat/gleason.hpp"

namespace projlat {

using Json = nlohmann::json;

Json to_json(const Element& x);
Json to_json(const Algebra& a);
/// Throws Parse on missing fields, wrong shapes or non-numeric entries.
Element element_from_json(const Json& j);
/// Certifies the result (NotAProjection).
Projection projection_from_json(const Json& j);
Algebra algebra_from_json(const Json& j);

/// "3,4", "3+4", "[3,4]", "M3+M4", or a path to a JSON file holding either
/// {"block_dims": [...]} or a bare list.
Algebra parse_algebra_spec(const std::string& spec);

/// {"kind":"density","T":matrix} | {"kind":"tracial"} |
/// {"kind":"m2_nonlinear","seed":u64}. The tracial kind takes its algebra
/// from an optional "block_dims" field, else from `fallback`.
Measure measure_from_json(const Json& j, const Algebra& fallback = Algebra({1}));

/// {"kind":"unitary","U":matrix,"transpose":bool} |
/// {"kind":"fault","base":spec,"break_at":projection}
LatticeMorphism morphism_from_json(const Json& j);

/// Parses text, converting parse errors to Parse with line and column.
Json parse_json_text(const std::string& text, const std::string& origin);
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace projlat
