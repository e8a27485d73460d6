#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>

#include "json.hpp"

#include "arco/ontology/schema.hpp"
#include "arco/rdf/store.hpp"
#include "arco/vocab.hpp"

namespace arco::verifier {

// An average kept as its two counts so reports over disjoint corpora add up.
struct Ratio {
  std::size_t numerator = 0;
  std::size_t denominator = 0;
  double value() const {
    return denominator == 0 ? 0.0 : static_cast<double>(numerator) / static_cast<double>(denominator);
  }
  friend bool operator==(const Ratio&, const Ratio&) = default;
};

struct StatsReport {
  std::size_t triples = 0;
  std::size_t same_as_links = 0;
  std::map<std::string, std::size_t> instances;   // schema class -> typed subjects
  std::map<std::string, std::size_t> predicates;  // schema property -> triples
  std::map<std::string, Ratio> averages;

  friend bool operator==(const StatsReport&, const StatsReport&) = default;

  StatsReport& operator+=(const StatsReport& other) {
    triples += other.triples;
    same_as_links += other.same_as_links;
    for (const auto& [k, v] : other.instances) instances[k] += v;
    for (const auto& [k, v] : other.predicates) predicates[k] += v;
    for (const auto& [k, r] : other.averages) {
      averages[k].numerator += r.numerator;
      averages[k].denominator += r.denominator;
    }
    return *this;
  }
};

// Names of the reported averages.
namespace metric {
inline constexpr const char* locations_per_entity = "TimeIndexedTypedLocation per CulturalEntity";
inline constexpr const char* attributions_per_entity = "AuthorshipAttribution per CulturalEntity";
inline constexpr const char* characteristics_per_status = "TechnicalCharacteristic per CulturalEntityTechnicalStatus";
inline constexpr const char* versions_per_record = "CatalogueRecordVersion per CatalogueRecord";
inline constexpr const char* organizations_per_property = "Organization per CulturalProperty";
}  // namespace metric

// Shortest form under the standard prefixes, e.g. a-loc:Place.
inline std::string compact_iri(const std::string& iri) {
  std::string best = iri;
  std::size_t best_len = 0;
  for (const auto& [prefix, ns] : vocab::standard_prefixes()) {
    if (prefix.empty() || ns.size() <= best_len || !iri.starts_with(ns)) continue;
    if (prefix == "arco") continue;
    best = prefix + ":" + iri.substr(ns.size());
    best_len = ns.size();
  }
  if (iri.starts_with(vocab::module_ns("arco"))) best = ":" + iri.substr(vocab::module_ns("arco").size());
  return best;
}

namespace detail {

inline std::set<rdf::TermId> typed(const rdf::TripleStore& store, const std::string& cls) {
  std::set<rdf::TermId> out;
  auto type = store.find(rdf::Term::iri(vocab::type()));
  auto c = store.find(rdf::Term::iri(cls));
  if (!type || !c) return out;
  for (const auto& t : store.match_ids(std::nullopt, *type, *c)) out.insert(t.s);
  return out;
}

// Number of predicate triples whose subject is in `subjects`.
inline std::size_t linked(const rdf::TripleStore& store, const std::set<rdf::TermId>& subjects,
                          const std::string& predicate) {
  auto p = store.find(rdf::Term::iri(predicate));
  if (!p) return 0;
  std::size_t n = 0;
  for (const auto& t : store.match_ids(std::nullopt, *p, std::nullopt)) n += subjects.contains(t.s) ? 1 : 0;
  return n;
}

}  // namespace detail

// Instance counts for every schema class, triple counts for every schema
// property, and the averages above. The store is expected to be
// materialized; nothing is inferred here.
inline StatsReport compute_stats(const rdf::TripleStore& store, const ontology::OntologySchema& schema) {
  StatsReport r;
  r.triples = store.size();
  for (const auto& [iri, def] : schema.classes()) r.instances[iri] = detail::typed(store, iri).size();
  for (const auto& [iri, def] : schema.properties()) {
    auto p = store.find(rdf::Term::iri(iri));
    r.predicates[iri] = p ? store.estimate(std::nullopt, *p, std::nullopt) : 0;
  }
  if (auto p = store.find(rdf::Term::iri(vocab::same_as())))
    r.same_as_links = store.estimate(std::nullopt, *p, std::nullopt);

  const auto entities = detail::typed(store, vocab::arco("CulturalEntity"));
  const auto properties = detail::typed(store, vocab::arco("CulturalProperty"));
  const auto statuses = detail::typed(store, vocab::dd("CulturalEntityTechnicalStatus"));
  const auto records = detail::typed(store, vocab::cat("CatalogueRecord"));

  r.averages[metric::locations_per_entity] = {detail::linked(store, entities, vocab::loc("hasTimeIndexedTypedLocation")),
                                              entities.size()};
  r.averages[metric::attributions_per_entity] = {detail::linked(store, entities, vocab::cd("hasAuthorshipAttribution")),
                                                 entities.size()};
  r.averages[metric::characteristics_per_status] = {
      detail::linked(store, statuses, vocab::dd("includesTechnicalCharacteristic")), statuses.size()};
  r.averages[metric::versions_per_record] = {detail::linked(store, records, vocab::cat("hasCatalogueRecordVersion")),
                                             records.size()};

  // Distinct (property, organization) pairs reached through an attribution.
  std::set<std::pair<rdf::TermId, rdf::TermId>> pairs;
  const auto organizations = detail::typed(store, vocab::core("Organization"));
  auto has_attr = store.find(rdf::Term::iri(vocab::cd("hasAuthorshipAttribution")));
  auto has_author = store.find(rdf::Term::iri(vocab::cd("hasAttributedAuthor")));
  if (has_attr && has_author) {
    for (const auto& a : store.match_ids(std::nullopt, *has_attr, std::nullopt)) {
      if (!properties.contains(a.s)) continue;
      for (const auto& b : store.match_ids(a.o, *has_author, std::nullopt))
        if (organizations.contains(b.o)) pairs.emplace(a.s, b.o);
    }
  }
  r.averages[metric::organizations_per_property] = {pairs.size(), properties.size()};
  return r;
}

inline nlohmann::ordered_json to_json(const StatsReport& r) {
  nlohmann::ordered_json j;
  j["triples"] = r.triples;
  j["sameAs links"] = r.same_as_links;
  auto& instances = j["instances"] = nlohmann::ordered_json::object();
  for (const auto& [iri, n] : r.instances) instances[compact_iri(iri)] = n;
  auto& predicates = j["predicates"] = nlohmann::ordered_json::object();
  for (const auto& [iri, n] : r.predicates) predicates[compact_iri(iri)] = n;
  auto& averages = j["averages"] = nlohmann::ordered_json::object();
  for (const auto& [name, ratio] : r.averages)
    averages[name] = {{"numerator", ratio.numerator}, {"denominator", ratio.denominator}, {"value", ratio.value()}};
  return j;
}

inline nlohmann::ordered_json to_json(const ontology::SchemaStats& s) {
  nlohmann::ordered_json j;
  j["modules"] = s.modules;
  j["classes"] = s.classes;
  j["object properties"] = s.object_properties;
  j["datatype properties"] = s.datatype_properties;
  j["individuals"] = s.individuals;
  j["disjointness axioms"] = s.disjointness_axioms;
  j["disjoint pairs (closed)"] = s.disjoint_pairs;
  j["property chains"] = s.property_chains;
  j["inverse pairs"] = s.inverse_pairs;
  j["labelled entities"] = s.labelled;
  j["commented entities"] = s.commented;
  auto& per_module = j["classes per module"] = nlohmann::ordered_json::object();
  for (const auto& [m, n] : s.classes_per_module) per_module[m] = n;
  auto& per_class = j["individuals per class"] = nlohmann::ordered_json::object();
  for (const auto& [c, n] : s.individuals_per_class) per_class[compact_iri(c)] = n;
  return j;
}

}  // namespace arco::verifier
