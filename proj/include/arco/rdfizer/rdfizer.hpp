#pragma once

#include <algorithm>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "arco/ontology/schema.hpp"
#include "arco/rdf/ntriples.hpp"
#include "arco/rdf/term.hpp"
#include "arco/rdfizer/mapping.hpp"
#include "arco/rdfizer/record.hpp"
#include "arco/text.hpp"
#include "arco/vocab.hpp"

namespace arco::rdfizer {

inline std::string percent_encode(std::string_view s) {
  static constexpr char hex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : s) {
    const bool unreserved = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' ||
                            c == '.' || c == '_' || c == '~';
    if (unreserved) {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(hex[c >> 4]);
      out.push_back(hex[c & 0xF]);
    }
  }
  return out;
}

// https://w3id.org/arco/resource/{kind}/{local-id, percent-encoded}
inline rdf::Term mint_iri(std::string_view kind, std::string_view local_id) {
  if (local_id.empty()) throw std::invalid_argument("mint_iri: empty local id");
  return rdf::Term::iri(std::string(vocab::resource_base) + std::string(kind) + "/" + percent_encode(local_id));
}

// Shared individuals (materials, places, agents, ...) are keyed by their
// normalized label, so equal labels mint equal IRIs in any record.
inline rdf::Term mint_shared(std::string_view kind, std::string_view label) {
  return mint_iri(kind, text::normalize_label(label));
}

struct ConvertOptions {
  bool strict = false;
};

namespace detail {

inline std::string local_name(const std::string& iri) {
  const auto cut = iri.find_last_of("/#");
  return cut == std::string::npos ? iri : iri.substr(cut + 1);
}

class Emitter {
 public:
  Emitter(const FieldMapping& mapping, const ConvertOptions& options, std::vector<std::string>* warnings)
      : mapping_(mapping), options_(options), warnings_(warnings) {}

  std::vector<rdf::Triple> run(const CatalogueRecord& record) {
    std::string cls;
    if (const std::string* mapped = mapping_.class_for(record.type_code)) {
      cls = *mapped;
    } else {
      if (options_.strict) throw MappingError("record " + record.id + ": unmapped type code '" + record.type_code + "'");
      warn(record, "unmapped type code '" + record.type_code + "', typed as CulturalProperty");
      cls = vocab::arco("CulturalProperty");
    }
    const rdf::Term property = mint_iri(local_name(cls), record.id);
    add(property, vocab::type(), iri(cls));
    if (!record.components.empty()) add(property, vocab::type(), iri(vocab::arco("ComplexCulturalProperty")));

    const rdf::Term catalogue_record = mint_iri("CatalogueRecord", record.id);
    add(catalogue_record, vocab::type(), iri(vocab::cat("CatalogueRecord")));
    add(catalogue_record, vocab::cat("describesCulturalProperty"), property);
    std::optional<rdf::Term> previous;
    for (const auto& label : record.versions) {
      const rdf::Term version = mint_iri("CatalogueRecordVersion", record.id + "-" + label);
      add(version, vocab::type(), iri(vocab::cat("CatalogueRecordVersion")));
      add(catalogue_record, vocab::cat("hasCatalogueRecordVersion"), version);
      add(version, vocab::label(), rdf::Term::literal(label));
      if (previous) add(*previous, vocab::cat("hasNextVersion"), version);
      previous = version;
    }

    describe(record, property, true);
    for (const auto& component : record.components) {
      const rdf::Term node = mint_iri("CulturalPropertyComponent", component.id);
      add(property, vocab::arco("hasCulturalPropertyComponent"), node);
      add(node, vocab::type(), iri(vocab::arco("CulturalPropertyComponent")));
      describe(component, node, false);
    }
    return std::move(out_);
  }

 private:
  static rdf::Term iri(const std::string& value) { return rdf::Term::iri(value); }

  void add(const rdf::Term& s, const std::string& p, const rdf::Term& o) { out_.emplace_back(s, iri(p), o); }

  void warn(const CatalogueRecord& record, const std::string& message) {
    if (warnings_) warnings_->push_back("record " + record.id + ": " + message);
  }

  rdf::Term characteristic(std::string_view kind, const std::string& label, std::string_view classifier) {
    const rdf::Term node = mint_shared(kind, label);
    add(node, vocab::type(), iri(vocab::dd(kind)));
    add(node, vocab::label(), rdf::Term::literal(label));
    add(node, vocab::dd("isCharacteristicClassifiedBy"), iri(vocab::dd(classifier)));
    return node;
  }

  static rdf::Term date(const std::string& value) {
    return rdf::Term::typed_literal(value, vocab::xsd(value.size() == 4 ? "gYear" : "date"));
  }

  void describe(const CatalogueRecord& record, const rdf::Term& entity, bool top_level) {
    if (record.title) add(entity, vocab::label(), rdf::Term::literal(*record.title));
    if (record.object_definition)
      add(entity, vocab::dd("hasObjectDefinition"), rdf::Term::literal(*record.object_definition));

    if (!record.materials.empty() || !record.techniques.empty() || !record.measurements.empty()) {
      const rdf::Term status = mint_iri("TechnicalStatus", record.id);
      add(entity, vocab::dd("hasTechnicalStatus"), status);
      add(status, vocab::type(), iri(vocab::dd("CulturalEntityTechnicalStatus")));
      auto include = [&](const rdf::Term& c) { add(status, vocab::dd("includesTechnicalCharacteristic"), c); };
      for (const auto& m : record.materials) include(characteristic("Material", m, "MaterialConcept"));
      for (const auto& t : record.techniques) include(characteristic("Technique", t, "TechniqueConcept"));
      for (const auto& m : record.measurements) {
        std::string label = m.kind + " " + m.value;
        if (!m.unit.empty()) label += " " + m.unit;
        const rdf::Term node = characteristic("Measurement", label, "MeasurementConcept");
        add(node, vocab::dd("hasMeasurementType"), rdf::Term::literal(m.kind));
        add(node, vocab::dd("hasValue"), rdf::Term::typed_literal(m.value, vocab::xsd("decimal")));
        if (!m.unit.empty()) add(node, vocab::dd("hasMeasurementUnit"), rdf::Term::literal(m.unit));
        include(node);
      }
    }

    std::size_t n = 0;
    for (const auto& loc : record.locations) {
      const rdf::Term node = mint_iri("TimeIndexedTypedLocation", record.id + "-" + std::to_string(++n));
      add(entity, vocab::loc("hasTimeIndexedTypedLocation"), node);
      add(node, vocab::type(), iri(vocab::loc("TimeIndexedTypedLocation")));
      std::string type_iri;
      if (const std::string* mapped = mapping_.location_for(loc.type)) {
        type_iri = *mapped;
      } else {
        if (options_.strict) throw MappingError("record " + record.id + ": unmapped location type '" + loc.type + "'");
        warn(record, "unmapped location type '" + loc.type + "', using Unspecified");
        type_iri = vocab::loc("Unspecified");
      }
      add(node, vocab::loc("hasLocationType"), iri(type_iri));
      const rdf::Term place = mint_shared("Place", loc.place);
      add(node, vocab::loc("atLocation"), place);
      add(place, vocab::type(), iri(vocab::loc("Place")));
      add(place, vocab::label(), rdf::Term::literal(loc.place));
      if (loc.from) add(node, vocab::loc("startTime"), date(*loc.from));
      if (loc.to) add(node, vocab::loc("endTime"), date(*loc.to));
    }

    n = 0;
    for (const auto& author : record.authors) {
      const rdf::Term node = mint_iri("AuthorshipAttribution", record.id + "-" + std::to_string(++n));
      add(entity, vocab::cd("hasAuthorshipAttribution"), node);
      add(node, vocab::type(), iri(vocab::cd("AuthorshipAttribution")));
      const rdf::Term agent = mint_shared("Agent", author.name);
      add(node, vocab::cd("hasAttributedAuthor"), agent);
      const char* agent_class = author.kind == "person" ? "Person" : author.kind == "organization" ? "Organization" : "Agent";
      add(agent, vocab::type(), iri(vocab::core(agent_class)));
      add(agent, vocab::label(), rdf::Term::literal(author.name));
      if (!author.role.empty()) {
        const rdf::Term role = mint_shared("Role", author.role);
        add(node, vocab::core("hasRole"), role);
        add(role, vocab::type(), iri(vocab::core("Role")));
        add(role, vocab::label(), rdf::Term::literal(author.role));
      }
    }

    if (top_level && record.cadastral) {
      const rdf::Term node = mint_iri("CadastralIdentity", record.id);
      add(entity, vocab::loc("hasCadastralIdentity"), node);
      add(node, vocab::type(), iri(vocab::loc("CadastralIdentity")));
      add(node, vocab::label(), rdf::Term::literal(*record.cadastral));
    }
  }

  const FieldMapping& mapping_;
  const ConvertOptions& options_;
  std::vector<std::string>* warnings_;
  std::vector<rdf::Triple> out_;
};

}  // namespace detail

// N-ary form of one record. Shortcut relations are left to the reasoner.
inline std::vector<rdf::Triple> to_rdf(const CatalogueRecord& record, const FieldMapping& mapping,
                                       const ConvertOptions& options = {},
                                       std::vector<std::string>* warnings = nullptr) {
  return detail::Emitter(mapping, options, warnings).run(record);
}

// Checks id uniqueness over records and their components, then converts
// each record in order.
inline std::vector<rdf::Triple> convert_corpus(const std::vector<CatalogueRecord>& records, const FieldMapping& mapping,
                                               const ConvertOptions& options = {},
                                               std::vector<std::string>* warnings = nullptr) {
  std::set<std::string> ids;
  for (const auto& record : records) {
    if (!ids.insert(record.id).second) throw MappingError("duplicate record id " + record.id);
    for (const auto& component : record.components)
      if (!ids.insert(component.id).second) throw MappingError("duplicate record id " + component.id);
  }
  std::vector<rdf::Triple> out;
  for (const auto& record : records) {
    auto triples = to_rdf(record, mapping, options, warnings);
    out.insert(out.end(), triples.begin(), triples.end());
  }
  return out;
}

// Every *.xml file of `dir`, in file-name order.
inline std::vector<CatalogueRecord> load_corpus_dir(const std::string& dir, std::vector<std::string>* warnings = nullptr,
                                                    const RecordParseOptions& options = {}) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw IoError("not a directory: " + dir);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".xml") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<CatalogueRecord> records;
  for (const auto& path : files) {
    try {
      records.push_back(parse_record_xml(rdf::read_file(path.string()), warnings, options));
    } catch (const ParseError& e) {
      throw ParseError(path.filename().string() + ": " + e.message(), e.line(), e.column());
    }
  }
  return records;
}

}  // namespace arco::rdfizer
