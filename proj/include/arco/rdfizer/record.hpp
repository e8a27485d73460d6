#pragma once

#include <algorithm>
#include <charconv>
#include <functional>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "arco/error.hpp"
#include "arco/text.hpp"

namespace arco::rdfizer {

struct Author {
  std::string name;
  std::string role;  // may be empty
  std::string kind;  // "person", "organization" or empty
  friend bool operator==(const Author&, const Author&) = default;
};

struct Measurement {
  std::string kind;
  std::string value;  // lexical decimal, as written
  std::string unit;
  friend bool operator==(const Measurement&, const Measurement&) = default;
};

struct LocationEntry {
  std::string type;
  std::string place;
  std::optional<std::string> from;
  std::optional<std::string> to;
  friend bool operator==(const LocationEntry&, const LocationEntry&) = default;
};

// A catalogue record as read from the record XML, before RDF emission.
struct CatalogueRecord {
  std::string id;
  std::string type_code;
  std::vector<std::string> versions{"1"};
  std::optional<std::string> title;
  std::optional<std::string> object_definition;
  std::vector<Author> authors;
  std::vector<std::string> materials;
  std::vector<std::string> techniques;
  std::vector<Measurement> measurements;
  std::vector<LocationEntry> locations;
  std::optional<std::string> cadastral;
  std::vector<CatalogueRecord> components;

  friend bool operator==(const CatalogueRecord&, const CatalogueRecord&) = default;
};

// ISO-8601 year (YYYY) or date (YYYY-MM-DD).
inline bool is_iso_year(std::string_view s) {
  return s.size() == 4 && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

inline bool is_iso_date(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-' || !is_iso_year(s.substr(0, 4))) return false;
  auto two = [&](std::size_t at) -> int {
    if (s[at] < '0' || s[at] > '9' || s[at + 1] < '0' || s[at + 1] > '9') return -1;
    return (s[at] - '0') * 10 + (s[at + 1] - '0');
  };
  const int month = two(5);
  const int day = two(8);
  return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

// Decimal lexical form: digits with an optional fractional part.
inline std::optional<double> parse_decimal(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::size_t dots = 0, digits = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '.') ++dots;
    else if (c >= '0' && c <= '9') ++digits;
    else if (!(i == 0 && (c == '-' || c == '+'))) return std::nullopt;
  }
  if (dots > 1 || digits == 0 || s.back() == '.') return std::nullopt;
  double value = 0;
  const char* begin = s.data() + (s[0] == '+' ? 1 : 0);
  auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

struct RecordParseOptions {
  // When set, type codes outside this list are rejected.
  const std::vector<std::string>* known_type_codes = nullptr;
};

namespace detail {

using boost::property_tree::ptree;

inline std::string attribute(const ptree& node, const std::string& name) {
  if (auto attrs = node.get_child_optional("<xmlattr>"))
    if (auto value = attrs->get_optional<std::string>(name)) return text::collapse_space(*value);
  return {};
}

inline std::string body(const ptree& node) { return text::collapse_space(node.data()); }

inline void fill_record(const ptree& node, CatalogueRecord& record, bool nested, std::vector<std::string>* warnings,
                        const RecordParseOptions& options) {
  auto warn = [&](const std::string& message) {
    if (warnings) warnings->push_back("record " + record.id + ": " + message);
  };
  record.id = attribute(node, "id");
  if (record.id.empty()) throw ParseError(nested ? "component without id" : "record without id", 0);
  record.type_code = attribute(node, "type");
  if (record.type_code.empty() && !nested) throw ParseError("record " + record.id + " without type", 0);
  if (options.known_type_codes && !nested && !record.type_code.empty()) {
    const auto& codes = *options.known_type_codes;
    if (std::find(codes.begin(), codes.end(), record.type_code) == codes.end())
      throw ParseError("record " + record.id + ": unknown type code " + record.type_code, 0);
  }
  const std::string versions = attribute(node, "versions");
  if (!versions.empty()) {
    record.versions.clear();
    std::istringstream in(versions);
    for (std::string v; in >> v;) {
      if (std::find(record.versions.begin(), record.versions.end(), v) != record.versions.end())
        throw ParseError("record " + record.id + ": duplicate version " + v, 0);
      record.versions.push_back(v);
    }
  }

  auto need_text = [&](const ptree& child, const std::string& element) {
    std::string value = body(child);
    if (value.empty()) throw ParseError("record " + record.id + ": empty <" + element + ">", 0);
    return value;
  };

  for (const auto& [name, child] : node) {
    if (name == "<xmlattr>" || name == "<xmlcomment>") continue;
    if (name == "title") {
      record.title = need_text(child, name);
    } else if (name == "object") {
      record.object_definition = need_text(child, name);
    } else if (name == "author") {
      Author author{need_text(child, name), attribute(child, "role"), attribute(child, "kind")};
      if (!author.kind.empty() && author.kind != "person" && author.kind != "organization")
        throw ParseError("record " + record.id + ": author kind must be person or organization", 0);
      record.authors.push_back(std::move(author));
    } else if (name == "material") {
      record.materials.push_back(need_text(child, name));
    } else if (name == "technique") {
      record.techniques.push_back(need_text(child, name));
    } else if (name == "measurement") {
      Measurement m{attribute(child, "type"), need_text(child, name), attribute(child, "unit")};
      auto value = parse_decimal(m.value);
      if (!value || !std::isfinite(*value) || *value < 0)
        throw ParseError("record " + record.id + ": measurement value must be a finite decimal >= 0, got " + m.value, 0);
      if (m.kind.empty()) throw ParseError("record " + record.id + ": measurement without type", 0);
      record.measurements.push_back(std::move(m));
    } else if (name == "location") {
      LocationEntry loc{attribute(child, "type"), need_text(child, name), std::nullopt, std::nullopt};
      if (loc.type.empty()) throw ParseError("record " + record.id + ": location without type", 0);
      for (auto [attr, slot] : {std::pair{"from", &loc.from}, std::pair{"to", &loc.to}}) {
        std::string value = attribute(child, attr);
        if (value.empty()) continue;
        if (!is_iso_year(value) && !is_iso_date(value))
          throw ParseError("record " + record.id + ": location date must be YYYY or YYYY-MM-DD, got " + value, 0);
        *slot = value;
      }
      record.locations.push_back(std::move(loc));
    } else if (name == "cadastral") {
      if (nested) {
        warn("cadastral identity on a component ignored");
        continue;
      }
      record.cadastral = need_text(child, name);
    } else if (name == "component") {
      if (nested) {
        warn("nested component ignored");
        continue;
      }
      CatalogueRecord component;
      component.versions.clear();
      fill_record(child, component, true, warnings, options);
      record.components.push_back(std::move(component));
    } else {
      warn("unknown element <" + name + "> ignored");
    }
  }
}

}  // namespace detail

// Reads one <record> document. Unknown elements are skipped and reported
// through `warnings` when given.
inline CatalogueRecord parse_record_xml(std::string_view xml, std::vector<std::string>* warnings = nullptr,
                                        const RecordParseOptions& options = {}) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in{std::string(xml)};
  try {
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError("malformed XML: " + e.message(), e.line());
  }
  std::optional<std::reference_wrapper<const pt::ptree>> root;
  for (const auto& [name, child] : tree) {
    if (name == "<xmlcomment>") continue;
    if (name != "record" || root) throw ParseError("document element must be a single <record>", 0);
    root = std::cref(child);
  }
  if (!root) throw ParseError("document element must be a single <record>", 0);
  CatalogueRecord record;
  detail::fill_record(root->get(), record, false, warnings, options);
  return record;
}

}  // namespace arco::rdfizer
