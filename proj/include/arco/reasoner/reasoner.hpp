#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "json.hpp"

#include "arco/ontology/schema.hpp"
#include "arco/rdf/store.hpp"
#include "arco/vocab.hpp"

namespace arco::reasoner {

// How a property chain s = p1 o ... o pn derives s-triples.
enum class ChainSemantics {
  // x s y only when y is typed with the declared range of s.
  range_guarded,
  // Plain OWL chain semantics: every chain path yields x s y.
  unrestricted,
};

struct MaterializeOptions {
  ChainSemantics chains = ChainSemantics::range_guarded;
};

namespace detail {

using rdf::IdTriple;
using rdf::TermId;

struct ChainRule {
  TermId shortcut;
  std::vector<TermId> members;
  std::optional<TermId> range;
};

// Schema compiled against one store's dictionary.
struct RuleSet {
  TermId type;
  std::unordered_map<TermId, std::vector<TermId>> supers;  // strict superclasses
  std::unordered_map<TermId, TermId> inverse;
  std::vector<ChainRule> chains;
  std::unordered_map<TermId, std::vector<std::pair<std::size_t, std::size_t>>> chain_positions;  // member -> (rule, index)
  std::unordered_map<TermId, std::vector<std::size_t>> chains_by_range;
};

inline RuleSet compile(rdf::TripleStore& store, const ontology::OntologySchema& schema, const MaterializeOptions& options) {
  RuleSet rules;
  auto id = [&](const std::string& iri) { return store.intern(rdf::Term::iri(iri)); };
  rules.type = id(vocab::type());
  for (const auto& [iri, def] : schema.classes()) {
    std::vector<TermId> ups;
    for (const auto& super : schema.superclasses(iri))
      if (super != iri) ups.push_back(id(super));
    if (!ups.empty()) rules.supers.emplace(id(iri), std::move(ups));
  }
  for (const auto& [iri, def] : schema.properties()) {
    if (def.inverse) rules.inverse.emplace(id(iri), id(*def.inverse));
    if (def.chain.empty()) continue;
    ChainRule rule{id(iri), {}, std::nullopt};
    for (const auto& member : def.chain) rule.members.push_back(id(member));
    if (options.chains == ChainSemantics::range_guarded && def.range) rule.range = id(*def.range);
    const std::size_t index = rules.chains.size();
    for (std::size_t i = 0; i < rule.members.size(); ++i) rules.chain_positions[rule.members[i]].emplace_back(index, i);
    if (rule.range) rules.chains_by_range[*rule.range].push_back(index);
    rules.chains.push_back(std::move(rule));
  }
  return rules;
}

// The x values with a path x p0 z0 ... p(k-1) from, walking backwards.
inline std::vector<TermId> walk_back(const rdf::TripleStore& store, const std::vector<TermId>& members, std::size_t count,
                                     TermId from) {
  std::vector<TermId> frontier = {from};
  for (std::size_t j = count; j-- > 0;) {
    std::unordered_set<TermId> next;
    for (TermId node : frontier)
      for (const auto& t : store.match_ids(std::nullopt, members[j], node)) next.insert(t.s);
    frontier.assign(next.begin(), next.end());
    if (frontier.empty()) break;
  }
  return frontier;
}

// The y values reached from `from` following members[begin..].
inline std::vector<TermId> walk_forward(const rdf::TripleStore& store, const std::vector<TermId>& members, std::size_t begin,
                                        TermId from) {
  std::vector<TermId> frontier = {from};
  for (std::size_t j = begin; j < members.size(); ++j) {
    std::unordered_set<TermId> next;
    for (TermId node : frontier)
      for (const auto& t : store.match_ids(node, members[j], std::nullopt)) next.insert(t.o);
    frontier.assign(next.begin(), next.end());
    if (frontier.empty()) break;
  }
  return frontier;
}

}  // namespace detail

// Extends `store` in place to the least fixpoint of
//   R1  x type C, C subClassOf D          => x type D
//   R2  x p y, p inverseOf q               => y q x
//   R3  x p1 z1 ... z(n-1) pn y [, y type range(s)] => x s y   for s = p1 o ... o pn
// using semi-naive evaluation: each round only joins against triples derived
// in the previous round. Returns the number of triples added.
inline std::size_t materialize_in_place(rdf::TripleStore& store, const ontology::OntologySchema& schema,
                                        const MaterializeOptions& options = {}) {
  using detail::IdTriple;
  using detail::TermId;
  const detail::RuleSet rules = detail::compile(store, schema, options);
  std::size_t added = 0;
  std::vector<IdTriple> delta(store.id_triples().begin(), store.id_triples().end());
  std::vector<IdTriple> next;
  auto emit = [&](IdTriple t) {
    if (store.term(t.s).is_literal()) return;
    if (store.insert(t)) {
      next.push_back(t);
      ++added;
    }
  };
  auto fire_chain = [&](const detail::ChainRule& rule, const std::vector<TermId>& starts, const std::vector<TermId>& ends) {
    for (TermId y : ends) {
      if (rule.range && !store.contains(IdTriple{y, rules.type, *rule.range})) continue;
      for (TermId x : starts) emit(IdTriple{x, rule.shortcut, y});
    }
  };

  while (!delta.empty()) {
    next.clear();
    for (const IdTriple& t : delta) {
      if (t.p == rules.type) {
        if (auto it = rules.supers.find(t.o); it != rules.supers.end())
          for (TermId super : it->second) emit(IdTriple{t.s, rules.type, super});
        // A new range typing can complete a chain that ends at t.s.
        if (auto it = rules.chains_by_range.find(t.o); it != rules.chains_by_range.end()) {
          for (std::size_t index : it->second) {
            const auto& rule = rules.chains[index];
            fire_chain(rule, detail::walk_back(store, rule.members, rule.members.size(), t.s), {t.s});
          }
        }
      }
      if (auto it = rules.inverse.find(t.p); it != rules.inverse.end()) {
        if (!store.term(t.o).is_literal()) emit(IdTriple{t.o, it->second, t.s});
      }
      if (auto it = rules.chain_positions.find(t.p); it != rules.chain_positions.end()) {
        for (const auto& [index, position] : it->second) {
          const auto& rule = rules.chains[index];
          auto starts = detail::walk_back(store, rule.members, position, t.s);
          if (starts.empty()) continue;
          auto ends = detail::walk_forward(store, rule.members, position + 1, t.o);
          fire_chain(rule, starts, ends);
        }
      }
    }
    delta.swap(next);
  }
  return added;
}

inline rdf::TripleStore materialize(const rdf::TripleStore& store, const ontology::OntologySchema& schema,
                                    const MaterializeOptions& options = {}) {
  rdf::TripleStore out = store;
  materialize_in_place(out, schema, options);
  return out;
}

// ------------------------------------------------------------------ consistency

enum class ViolationKind { disjointness, domain_clash, range_clash };

inline const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::disjointness: return "disjointness";
    case ViolationKind::domain_clash: return "domain-clash";
    case ViolationKind::range_clash: return "range-clash";
  }
  return "unknown";
}

struct Violation {
  ViolationKind kind = ViolationKind::disjointness;
  rdf::Term entity;
  // The two conflicting classes, first < second. For domain/range clashes:
  // the declared domain or range, and the entity's conflicting class.
  std::string first_class;
  std::string second_class;
  // The offending triple, for domain/range clashes.
  std::optional<rdf::Triple> triple;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ConsistencyOptions {
  // Materialize a copy of the store before checking.
  bool rematerialize = false;
  // Also report domain and range clashes.
  bool include_domain_range = false;
  MaterializeOptions materialize;
};

namespace detail {

inline std::map<TermId, std::set<std::string>> types_by_subject(const rdf::TripleStore& store,
                                                                const ontology::OntologySchema& schema) {
  std::map<TermId, std::set<std::string>> types;
  auto type = store.find(rdf::Term::iri(vocab::type()));
  if (!type) return types;
  for (const auto& t : store.match_ids(std::nullopt, *type, std::nullopt)) {
    const rdf::Term& cls = store.term(t.o);
    if (cls.is_iri() && schema.has_class(cls.value())) types[t.s].insert(cls.value());
  }
  return types;
}

inline void sort_violations(std::vector<Violation>& out) {
  std::sort(out.begin(), out.end(), [](const Violation& a, const Violation& b) {
    auto key = [](const Violation& v) {
      return std::make_tuple(v.entity.to_string(), static_cast<int>(v.kind), v.first_class, v.second_class,
                             v.triple ? v.triple->to_string() : std::string());
    };
    return key(a) < key(b);
  });
}

}  // namespace detail

// Domain and range clashes: x p y where x (or y) carries a class disjoint
// with the domain (or range) of p.
inline std::vector<Violation> check_domain_range(const rdf::TripleStore& store, const ontology::OntologySchema& schema) {
  std::vector<Violation> out;
  const auto types = detail::types_by_subject(store, schema);
  auto clash = [&](rdf::TermId node, const std::string& expected) -> std::optional<std::string> {
    auto it = types.find(node);
    if (it == types.end() || !schema.has_class(expected)) return std::nullopt;
    for (const auto& cls : it->second)
      if (schema.are_disjoint(cls, expected)) return cls;
    return std::nullopt;
  };
  for (const auto& t : store.id_triples()) {
    const rdf::Term& predicate = store.term(t.p);
    const auto* def = schema.find_property(predicate.value());
    if (!def) continue;
    if (def->domain) {
      if (auto cls = clash(t.s, *def->domain))
        out.push_back({ViolationKind::domain_clash, store.term(t.s), *def->domain, *cls, store.to_triple(t)});
    }
    if (def->range && def->kind == ontology::PropertyKind::object && !store.term(t.o).is_literal()) {
      if (auto cls = clash(t.o, *def->range))
        out.push_back({ViolationKind::range_clash, store.term(t.o), *def->range, *cls, store.to_triple(t)});
    }
  }
  detail::sort_violations(out);
  return out;
}

// One violation per (entity, class pair) where the entity is typed with two
// disjoint classes. Pairs implied by a more general conflicting pair on the
// same entity are folded into it, so an entity typed Movable and Intangible
// reports the Tangible/Intangible clash once after materialization.
inline std::vector<Violation> check_consistency(const rdf::TripleStore& input, const ontology::OntologySchema& schema,
                                                const ConsistencyOptions& options = {}) {
  std::optional<rdf::TripleStore> copy;
  if (options.rematerialize) copy = materialize(input, schema, options.materialize);
  const rdf::TripleStore& store = copy ? *copy : input;

  std::vector<Violation> out;
  for (const auto& [subject, classes] : detail::types_by_subject(store, schema)) {
    std::vector<ontology::ClassPair> present;
    for (auto a = classes.begin(); a != classes.end(); ++a)
      for (auto b = std::next(a); b != classes.end(); ++b)
        if (schema.are_disjoint(*a, *b)) present.emplace_back(*a, *b);
    auto covers = [&](const ontology::ClassPair& general, const ontology::ClassPair& specific) {
      const auto& [ga, gb] = general;
      const auto& [sa, sb] = specific;
      return (schema.is_subclass_of(sa, ga) && schema.is_subclass_of(sb, gb)) ||
             (schema.is_subclass_of(sa, gb) && schema.is_subclass_of(sb, ga));
    };
    for (const auto& pair : present) {
      const bool dominated = std::any_of(present.begin(), present.end(), [&](const auto& other) {
        return other != pair && covers(other, pair);
      });
      if (!dominated) out.push_back({ViolationKind::disjointness, store.term(subject), pair.first, pair.second, std::nullopt});
    }
  }
  if (options.include_domain_range) {
    auto extra = check_domain_range(store, schema);
    out.insert(out.end(), extra.begin(), extra.end());
  }
  detail::sort_violations(out);
  return out;
}

// ------------------------------------------------------------------ reports

// One line per violation: `kind<TAB>entity<TAB>class<TAB>class[<TAB>triple]`.
inline std::string render_text(const std::vector<Violation>& violations) {
  std::string out;
  for (const auto& v : violations) {
    out += std::string(to_string(v.kind)) + "\t" + v.entity.to_string() + "\t<" + v.first_class + ">\t<" +
           v.second_class + ">";
    if (v.triple) out += "\t" + v.triple->to_string();
    out += "\n";
  }
  return out;
}

inline nlohmann::json to_json(const std::vector<Violation>& violations) {
  nlohmann::json items = nlohmann::json::array();
  for (const auto& v : violations) {
    nlohmann::json item = {{"kind", to_string(v.kind)},
                           {"entity", v.entity.to_string()},
                           {"classes", {v.first_class, v.second_class}}};
    if (v.triple) item["triple"] = v.triple->to_string();
    items.push_back(std::move(item));
  }
  return {{"count", violations.size()}, {"violations", std::move(items)}};
}

}  // namespace arco::reasoner
