#pragma once

#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "arco/error.hpp"
#include "arco/ontology/schema.hpp"
#include "arco/rdf/ntriples.hpp"
#include "arco/text.hpp"
#include "arco/vocab.hpp"

namespace arco::rdfizer {

class MappingError : public Error {
 public:
  using Error::Error;
};

// Record type code -> cultural-property class, location type label ->
// LocationType individual. Location keys are stored normalized.
struct FieldMapping {
  std::map<std::string, std::string> type_classes;
  std::map<std::string, std::string> location_types;

  const std::string* class_for(const std::string& code) const {
    auto it = type_classes.find(code);
    return it == type_classes.end() ? nullptr : &it->second;
  }

  const std::string* location_for(std::string_view label) const {
    auto it = location_types.find(text::normalize_label(label));
    return it == location_types.end() ? nullptr : &it->second;
  }

  std::vector<std::string> type_codes() const {
    std::vector<std::string> codes;
    for (const auto& [code, cls] : type_classes) codes.push_back(code);
    return codes;
  }
};

inline const std::vector<std::string>& location_type_names() {
  static const std::vector<std::string> names = {
      "History",  "Storage", "Finding", "Production", "Exhibition",  "Provenance", "Acquisition", "Restoration",
      "Loan",     "Survey",  "Reuse",   "Deposit",    "Custody",     "Origin",     "Execution",   "Display",
      "Transit",  "Excavation", "Sale", "Donation",   "Photography", "Recording",  "Performance", "Unspecified",
  };
  return names;
}

inline FieldMapping default_mapping() {
  FieldMapping m;
  const std::pair<const char*, const char*> types[] = {
      {"OA", "HistoricOrArtisticProperty"},        {"F", "PhotographicHeritage"},
      {"RA", "ArchaeologicalProperty"},            {"BDM", "DemoEthnoAnthropologicalHeritage"},
      {"N", "NumismaticProperty"},                 {"BN", "NaturalHeritage"},
      {"PST", "ScientificOrTechnologicalHeritage"}, {"A", "ArchitecturalOrLandscapeHeritage"},
      {"MI", "MusicHeritage"},
  };
  for (const auto& [code, local] : types) m.type_classes[code] = vocab::arco(local);
  for (const auto& name : location_type_names()) m.location_types[text::normalize_label(name)] = vocab::loc(name);
  return m;
}

namespace detail {

inline std::string expand_curie(const std::string& token, const std::map<std::string, std::string>& prefixes,
                                std::size_t line) {
  if (token.size() > 2 && token.front() == '<' && token.back() == '>') return token.substr(1, token.size() - 2);
  const auto colon = token.find(':');
  if (colon == std::string::npos) throw ParseError("expected prefixed name or <IRI>, got '" + token + "'", line);
  auto it = prefixes.find(token.substr(0, colon));
  if (it == prefixes.end()) throw ParseError("unknown prefix '" + token.substr(0, colon + 1) + "'", line);
  return it->second + token.substr(colon + 1);
}

}  // namespace detail

// Line format, '#' starts a comment:
//   prefix NAME: <IRI>
//   type CODE CLASS
//   location LABEL WORDS... INDIVIDUAL
// Entries are layered over the defaults unless the file starts with `reset`.
inline FieldMapping load_mapping(std::string_view content, FieldMapping base = default_mapping()) {
  auto prefixes = vocab::standard_prefixes();
  std::istringstream in{std::string(content)};
  std::size_t number = 0;
  bool first = true;
  for (std::string line; std::getline(in, line);) {
    ++number;
    line = text::strip_comment(std::move(line));
    std::istringstream words(line);
    std::vector<std::string> tokens;
    for (std::string w; words >> w;) tokens.push_back(w);
    if (tokens.empty()) continue;
    const std::string& directive = tokens[0];
    if (directive == "reset" && tokens.size() == 1) {
      if (!first) throw ParseError("'reset' must come before any entry", number);
      base = FieldMapping{};
    } else if (directive == "prefix" && tokens.size() == 3 && tokens[1].back() == ':') {
      const std::string& iri = tokens[2];
      if (iri.size() < 2 || iri.front() != '<' || iri.back() != '>') throw ParseError("prefix IRI must be in <>", number);
      prefixes[tokens[1].substr(0, tokens[1].size() - 1)] = iri.substr(1, iri.size() - 2);
    } else if (directive == "type" && tokens.size() == 3) {
      base.type_classes[tokens[1]] = detail::expand_curie(tokens[2], prefixes, number);
    } else if (directive == "location" && tokens.size() >= 3) {
      std::string label;
      for (std::size_t i = 1; i + 1 < tokens.size(); ++i) label += (i > 1 ? " " : "") + tokens[i];
      base.location_types[text::normalize_label(label)] = detail::expand_curie(tokens.back(), prefixes, number);
    } else {
      throw ParseError("unrecognised mapping entry '" + directive + "'", number);
    }
    first = false;
  }
  return base;
}

inline FieldMapping load_mapping_file(const std::string& path) { return load_mapping(rdf::read_file(path)); }

// Every class must be a CulturalProperty subclass and every location target a
// LocationType individual of the schema.
inline void validate_mapping(const FieldMapping& mapping, const ontology::OntologySchema& schema) {
  const std::string cultural_property = vocab::arco("CulturalProperty");
  for (const auto& [code, cls] : mapping.type_classes) {
    if (!schema.has_class(cls)) throw MappingError("type " + code + ": class <" + cls + "> not in schema");
    if (!schema.is_subclass_of(cls, cultural_property))
      throw MappingError("type " + code + ": <" + cls + "> is not a cultural property class");
  }
  const std::string location_type = vocab::loc("LocationType");
  for (const auto& [label, individual] : mapping.location_types) {
    auto it = schema.individuals().find(individual);
    if (it == schema.individuals().end() || !schema.is_subclass_of(it->second, location_type))
      throw MappingError("location '" + label + "': <" + individual + "> is not a LocationType individual");
  }
}

}  // namespace arco::rdfizer
