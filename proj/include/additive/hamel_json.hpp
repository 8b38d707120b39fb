#ifndef ADDITIVE_HAMEL_JSON_HPP
#define ADDITIVE_HAMEL_JSON_HPP

#include <string>

#include <json.hpp>

#include "additive/hamel.hpp"

namespace additive::hamel {

/// Schema: {"basis": [{"label": str, "embedding": float}...],
///          "assignments": {"label": "p/q", ...},
///          "independence": str (optional)}
/// Rationals travel as "p/q" strings so exactness is preserved.
AdditiveMap additive_map_from_json(const nlohmann::ordered_json& doc);

nlohmann::ordered_json additive_map_to_json(const AdditiveMap& f);

AdditiveMap load_additive_map(const std::string& path);

/// Canonical serialization: basis order preserved, assignments emitted in
/// basis order with canonical "p/q" values, two-space indent, trailing
/// newline. Re-ingesting the output reproduces it byte for byte.
std::string canonical_json_text(const AdditiveMap& f);

}  // namespace additive::hamel

#endif
