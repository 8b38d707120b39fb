#include "additive/hamel_json.hpp"

#include <fstream>

#include "additive/errors.hpp"

namespace additive::hamel {

using nlohmann::ordered_json;

AdditiveMap additive_map_from_json(const ordered_json& doc) {
  if (!doc.is_object()) throw ParseError("hamel spec: document must be an object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "basis" && key != "assignments" && key != "independence") {
      throw ParseError("hamel spec: unknown key \"" + key + "\"");
    }
  }
  if (!doc.contains("basis") || !doc["basis"].is_array()) {
    throw ParseError("hamel spec: \"basis\" array required");
  }

  std::vector<BasisSymbol> symbols;
  size_t i = 0;
  for (const auto& entry : doc["basis"]) {
    std::string where = "basis[" + std::to_string(i) + "]";
    if (!entry.is_object()) throw ParseError("hamel spec: " + where + " must be an object");
    if (!entry.contains("label") || !entry["label"].is_string()) {
      throw ParseError("hamel spec: " + where + ".label must be a string");
    }
    if (!entry.contains("embedding") || !entry["embedding"].is_number()) {
      throw ParseError("hamel spec: " + where + ".embedding must be a number");
    }
    symbols.push_back({entry["label"].get<std::string>(),
                       entry["embedding"].get<double>()});
    ++i;
  }

  std::string independence;
  if (doc.contains("independence")) {
    if (!doc["independence"].is_string()) {
      throw ParseError("hamel spec: \"independence\" must be a string");
    }
    independence = doc["independence"].get<std::string>();
  }

  HamelBasisSpec basis(std::move(symbols), std::move(independence));

  std::vector<std::pair<std::string, Rational>> assignments;
  if (doc.contains("assignments")) {
    if (!doc["assignments"].is_object()) {
      throw ParseError("hamel spec: \"assignments\" must be an object");
    }
    for (const auto& [label, value] : doc["assignments"].items()) {
      if (!value.is_string()) {
        throw ParseError("hamel spec: assignments." + label +
                         " must be a \"p/q\" string");
      }
      Rational r;
      try {
        r = Rational::from_string(value.get<std::string>());
      } catch (const ParseError& e) {
        throw ParseError("hamel spec: assignments." + label + ": " + e.what());
      }
      assignments.emplace_back(label, std::move(r));
    }
  }
  return AdditiveMap(std::move(basis), assignments);
}

ordered_json additive_map_to_json(const AdditiveMap& f) {
  ordered_json doc;
  doc["basis"] = ordered_json::array();
  for (const auto& s : f.basis().symbols()) {
    doc["basis"].push_back({{"label", s.label}, {"embedding", s.embedding}});
  }
  ordered_json assignments = ordered_json::object();
  for (size_t i = 0; i < f.basis().size(); ++i) {
    Rational v = f.assignment(i);
    if (!v.is_zero()) {
      assignments[f.basis().symbol(i).label] = v.str();
    }
  }
  doc["assignments"] = std::move(assignments);
  if (!f.basis().independence_declaration().empty()) {
    doc["independence"] = f.basis().independence_declaration();
  }
  return doc;
}

AdditiveMap load_additive_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("hamel spec: cannot open \"" + path + "\"");
  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("hamel spec \"" + path + "\": " + e.what());
  }
  return additive_map_from_json(doc);
}

std::string canonical_json_text(const AdditiveMap& f) {
  return additive_map_to_json(f).dump(2) + "\n";
}

}  // namespace additive::hamel
