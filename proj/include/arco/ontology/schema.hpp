#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "arco/error.hpp"
#include "arco/rdf/ntriples.hpp"
#include "arco/rdf/store.hpp"
#include "arco/rdf/turtle.hpp"
#include "arco/vocab.hpp"

namespace arco::ontology {

// The seven modules of the network, by namespace segment.
inline constexpr std::array<std::string_view, 7> module_names = {
    "arco", "core", "catalogue", "location", "denotative-description", "context-description", "cultural-event"};

inline bool is_module_name(std::string_view name) {
  return std::find(module_names.begin(), module_names.end(), name) != module_names.end();
}

// Module owning an ontology-namespace IRI, or nullopt when `iri` is not under
// the network base namespace. An IRI under the base namespace but in an
// unknown module yields the unknown segment.
inline std::optional<std::string> module_segment(std::string_view iri) {
  if (!iri.starts_with(vocab::ontology_base)) return std::nullopt;
  std::string_view rest = iri.substr(vocab::ontology_base.size());
  return std::string(rest.substr(0, rest.find('/')));
}

struct ClassDef {
  std::string iri;
  std::string module;
  std::set<std::string> parents;
  std::set<std::string> disjoint_with;
  std::string label;
  std::string comment;
};

enum class PropertyKind { object, datatype };

struct PropertyDef {
  std::string iri;
  std::string module;
  PropertyKind kind = PropertyKind::object;
  std::optional<std::string> domain;
  std::optional<std::string> range;
  std::optional<std::string> inverse;
  std::vector<std::string> chain;  // empty, or at least two members
  std::string label;
  std::string comment;
};

struct ModuleDef {
  std::string name;
  std::string iri;
  std::set<std::string> imports;
};

using ClassPair = std::pair<std::string, std::string>;

class SchemaError : public Error {
 public:
  enum class Code { cycle, undefined_reference, unknown_module, self_disjoint, invalid_chain, invalid_declaration };

  SchemaError(Code code, const std::string& message) : Error(message), code_(code) {}
  Code code() const noexcept { return code_; }

 private:
  Code code_;
};

class OntologySchema;
OntologySchema load_schema_triples(const std::vector<rdf::Triple>& triples);

// Immutable view of the loaded ontology subset. Disjointness and inverses are
// symmetric; the class hierarchy is acyclic.
class OntologySchema {
 public:
  OntologySchema() = default;

  static std::string_view base_namespace() { return vocab::ontology_base; }

  const std::map<std::string, ClassDef>& classes() const noexcept { return classes_; }
  const std::map<std::string, PropertyDef>& properties() const noexcept { return properties_; }
  const std::map<std::string, std::string>& individuals() const noexcept { return individuals_; }
  const std::map<std::string, ModuleDef>& modules() const noexcept { return modules_; }

  bool has_class(std::string_view iri) const { return classes_.contains(std::string(iri)); }
  bool has_property(std::string_view iri) const { return properties_.contains(std::string(iri)); }

  const ClassDef& class_def(std::string_view iri) const {
    auto it = classes_.find(std::string(iri));
    if (it == classes_.end()) throw SchemaError(SchemaError::Code::undefined_reference, "undefined class " + std::string(iri));
    return it->second;
  }

  const PropertyDef* find_property(std::string_view iri) const {
    auto it = properties_.find(std::string(iri));
    return it == properties_.end() ? nullptr : &it->second;
  }

  // Reflexive: every class is a subclass of itself.
  bool is_subclass_of(std::string_view sub, std::string_view super) const {
    class_def(super);
    return superclasses(sub).contains(std::string(super));
  }

  // Reflexive-transitive closure upward.
  const std::set<std::string>& superclasses(std::string_view iri) const {
    auto it = supers_.find(std::string(iri));
    if (it == supers_.end()) class_def(iri);
    return it->second;
  }

  // Reflexive-transitive closure downward.
  const std::set<std::string>& subclasses(std::string_view iri) const {
    auto it = subs_.find(std::string(iri));
    if (it == subs_.end()) class_def(iri);
    return it->second;
  }

  // All unordered disjoint pairs (first < second), closed downward.
  const std::set<ClassPair>& disjoint_pairs() const noexcept { return disjoint_pairs_; }

  bool are_disjoint(std::string_view a, std::string_view b) const {
    ClassPair key = a < b ? ClassPair{std::string(a), std::string(b)} : ClassPair{std::string(b), std::string(a)};
    return disjoint_pairs_.contains(key);
  }

  // Declared axioms only, as unordered pairs.
  std::set<ClassPair> declared_disjointness() const {
    std::set<ClassPair> out;
    for (const auto& [iri, def] : classes_)
      for (const auto& other : def.disjoint_with) out.insert(iri < other ? ClassPair{iri, other} : ClassPair{other, iri});
    return out;
  }

  // Properties defined by a property chain.
  std::vector<const PropertyDef*> chain_properties() const {
    std::vector<const PropertyDef*> out;
    for (const auto& [iri, def] : properties_)
      if (!def.chain.empty()) out.push_back(&def);
    return out;
  }

  // Individuals whose declared class is a subclass of `class_iri`.
  std::vector<std::string> individuals_of(std::string_view class_iri) const {
    std::vector<std::string> out;
    for (const auto& [iri, cls] : individuals_)
      if (superclasses(cls).contains(std::string(class_iri))) out.push_back(iri);
    return out;
  }

 private:
  friend OntologySchema load_schema_triples(const std::vector<rdf::Triple>& triples);

  void finalize();

  std::map<std::string, ClassDef> classes_;
  std::map<std::string, PropertyDef> properties_;
  std::map<std::string, std::string> individuals_;
  std::map<std::string, ModuleDef> modules_;

  std::map<std::string, std::set<std::string>> supers_;
  std::map<std::string, std::set<std::string>> subs_;
  std::set<ClassPair> disjoint_pairs_;
};

namespace detail {

inline bool is_datatype_iri(std::string_view iri) {
  return iri.starts_with(vocab::xsd_ns) || iri == vocab::rdfs("Literal") || iri == vocab::rdf("langString");
}

inline const std::set<std::string>& meta_classes() {
  static const std::set<std::string> meta = {
      vocab::owl("Class"),           vocab::rdfs("Class"),          vocab::owl("ObjectProperty"),
      vocab::owl("DatatypeProperty"), vocab::owl("AnnotationProperty"), vocab::rdf("Property"),
      vocab::owl("Ontology"),        vocab::owl("NamedIndividual"),  vocab::owl("TransitiveProperty"),
      vocab::owl("FunctionalProperty"), vocab::owl("InverseFunctionalProperty"), vocab::owl("SymmetricProperty")};
  return meta;
}

inline std::string entity_module(const std::string& iri, const char* what) {
  auto segment = module_segment(iri);
  if (!segment || !is_module_name(*segment))
    throw SchemaError(SchemaError::Code::unknown_module, std::string(what) + " " + iri + " is not in a known module");
  return *segment;
}

}  // namespace detail

inline void OntologySchema::finalize() {
  using Code = SchemaError::Code;
  // Reference integrity.
  for (const auto& [iri, def] : classes_) {
    for (const auto& parent : def.parents)
      if (!classes_.contains(parent))
        throw SchemaError(Code::undefined_reference, iri + " has undefined superclass " + parent);
    for (const auto& other : def.disjoint_with)
      if (!classes_.contains(other))
        throw SchemaError(Code::undefined_reference, iri + " is disjoint with undefined class " + other);
  }
  for (auto& [iri, def] : properties_) {
    auto check_class = [&](const std::optional<std::string>& ref, const char* role) {
      if (!ref || classes_.contains(*ref) || *ref == vocab::owl("Thing")) return;
      if (def.kind == PropertyKind::datatype && role == std::string_view("range") && detail::is_datatype_iri(*ref)) return;
      throw SchemaError(Code::undefined_reference, iri + " has undefined " + role + " " + *ref);
    };
    check_class(def.domain, "domain");
    check_class(def.range, "range");
    if (def.inverse && !properties_.contains(*def.inverse))
      throw SchemaError(Code::undefined_reference, iri + " has undefined inverse " + *def.inverse);
    if (!def.chain.empty()) {
      if (def.chain.size() < 2) throw SchemaError(Code::invalid_chain, iri + " has a property chain shorter than 2");
      if (def.kind != PropertyKind::object) throw SchemaError(Code::invalid_chain, iri + " is a chained datatype property");
      for (const auto& member : def.chain)
        if (!properties_.contains(member))
          throw SchemaError(Code::undefined_reference, iri + " chain member " + member + " is not a defined property");
    }
  }
  for (const auto& [iri, cls] : individuals_)
    if (!classes_.contains(cls)) throw SchemaError(Code::undefined_reference, "individual " + iri + " has undefined class " + cls);

  // Symmetrize inverses and disjointness.
  for (auto& [iri, def] : properties_) {
    if (!def.inverse) continue;
    auto& other = properties_.at(*def.inverse);
    if (other.inverse && *other.inverse != iri)
      throw SchemaError(Code::invalid_declaration, *def.inverse + " declares two different inverses");
    other.inverse = iri;
  }
  for (auto& [iri, def] : classes_)
    for (const auto& other : std::set<std::string>(def.disjoint_with)) classes_.at(other).disjoint_with.insert(iri);

  // Acyclicity, by depth-first search.
  enum class Mark { none, active, done };
  std::map<std::string, Mark> marks;
  std::function<void(const std::string&)> visit = [&](const std::string& iri) {
    Mark& mark = marks[iri];
    if (mark == Mark::done) return;
    if (mark == Mark::active) throw SchemaError(Code::cycle, "subclass cycle through " + iri);
    mark = Mark::active;
    std::set<std::string> closure = {iri};
    for (const auto& parent : classes_.at(iri).parents) {
      visit(parent);
      const auto& up = supers_.at(parent);
      closure.insert(up.begin(), up.end());
    }
    supers_[iri] = std::move(closure);
    marks[iri] = Mark::done;
  };
  for (const auto& [iri, def] : classes_) visit(iri);
  for (const auto& [iri, up] : supers_)
    for (const auto& s : up) subs_[s].insert(iri);

  for (const auto& [a, b] : declared_disjointness()) {
    for (const auto& x : subs_.at(a)) {
      for (const auto& y : subs_.at(b)) {
        if (x == y) throw SchemaError(Code::self_disjoint, x + " is disjoint with itself (via " + a + " and " + b + ")");
        disjoint_pairs_.insert(x < y ? ClassPair{x, y} : ClassPair{y, x});
      }
    }
  }
}

// Builds a schema from manifest triples using the standard RDFS/OWL terms:
// owl:Ontology/owl:imports for modules, owl:Class, owl:ObjectProperty,
// owl:DatatypeProperty, rdfs:subClassOf, owl:disjointWith, rdfs:domain,
// rdfs:range, owl:inverseOf, owl:propertyChainAxiom (an RDF list), and
// rdfs:label/comment. Any other typed subject is a controlled-vocabulary
// individual.
inline OntologySchema load_schema_triples(const std::vector<rdf::Triple>& triples) {
  using Code = SchemaError::Code;
  rdf::TripleStore store(triples);
  OntologySchema schema;

  auto objects = [&](const rdf::Term& subject, const std::string& predicate) {
    std::vector<rdf::Term> out;
    for (const auto& t : store.match({subject, rdf::Term::iri(predicate), std::nullopt})) out.push_back(t.object());
    return out;
  };
  auto single_iri = [&](const rdf::Term& subject, const std::string& predicate) -> std::optional<std::string> {
    auto objs = objects(subject, predicate);
    if (objs.empty()) return std::nullopt;
    if (objs.size() > 1 || !objs[0].is_iri())
      throw SchemaError(Code::invalid_declaration, subject.value() + " needs exactly one IRI for " + predicate);
    return objs[0].value();
  };
  auto text = [&](const rdf::Term& subject, const std::string& predicate) {
    std::string best;
    for (const auto& o : objects(subject, predicate)) {
      if (!o.is_literal()) continue;
      // English first, then untagged, then whatever comes first.
      if (o.language() == "en") return o.value();
      if (best.empty() || o.language().empty()) best = o.value();
    }
    return best;
  };
  auto typed = [&](const std::string& cls) {
    std::vector<rdf::Term> out;
    for (const auto& t : store.match({std::nullopt, rdf::Term::iri(vocab::type()), rdf::Term::iri(cls)}))
      out.push_back(t.subject());
    return out;
  };

  for (const auto& subject : typed(vocab::owl("Ontology"))) {
    const std::string& iri = subject.value();
    if (!iri.starts_with(vocab::ontology_base))
      throw SchemaError(Code::unknown_module, "ontology " + iri + " is outside the network namespace");
    std::string name = iri.substr(vocab::ontology_base.size());
    if (!name.empty() && name.back() == '/') name.pop_back();
    if (!is_module_name(name)) throw SchemaError(Code::unknown_module, "unknown module " + name);
    ModuleDef module{name, iri, {}};
    for (const auto& o : objects(subject, vocab::owl("imports"))) module.imports.insert(o.value());
    schema.modules_[name] = std::move(module);
  }

  std::set<std::string> declared;
  for (const std::string& meta : {vocab::owl("Class"), vocab::rdfs("Class")}) {
    for (const auto& subject : typed(meta)) {
      if (!subject.is_iri()) continue;
      const std::string& iri = subject.value();
      if (schema.classes_.contains(iri)) continue;
      ClassDef def{iri, detail::entity_module(iri, "class"), {}, {}, text(subject, vocab::label()),
                   text(subject, vocab::rdfs("comment"))};
      for (const auto& o : objects(subject, vocab::rdfs("subClassOf")))
        if (o.is_iri() && o.value() != vocab::owl("Thing")) def.parents.insert(o.value());
      for (const auto& o : objects(subject, vocab::owl("disjointWith"))) def.disjoint_with.insert(o.value());
      schema.classes_.emplace(iri, std::move(def));
      declared.insert(iri);
    }
  }

  const std::pair<std::string, PropertyKind> property_types[] = {{vocab::owl("ObjectProperty"), PropertyKind::object},
                                                                  {vocab::owl("DatatypeProperty"), PropertyKind::datatype}};
  for (const auto& [meta, kind] : property_types) {
    for (const auto& subject : typed(meta)) {
      const std::string& iri = subject.value();
      if (schema.properties_.contains(iri))
        throw SchemaError(Code::invalid_declaration, iri + " is declared as both object and datatype property");
      PropertyDef def;
      def.iri = iri;
      def.module = detail::entity_module(iri, "property");
      def.kind = kind;
      def.domain = single_iri(subject, vocab::rdfs("domain"));
      def.range = single_iri(subject, vocab::rdfs("range"));
      def.inverse = single_iri(subject, vocab::owl("inverseOf"));
      def.label = text(subject, vocab::label());
      def.comment = text(subject, vocab::rdfs("comment"));
      auto chains = objects(subject, vocab::owl("propertyChainAxiom"));
      if (chains.size() > 1) throw SchemaError(Code::invalid_chain, iri + " has more than one property chain");
      if (!chains.empty()) {
        rdf::Term cell = chains[0];
        std::set<rdf::Term> seen;
        while (!(cell.is_iri() && cell.value() == vocab::rdf("nil"))) {
          if (!seen.insert(cell).second) throw SchemaError(Code::invalid_chain, iri + " has a cyclic chain list");
          auto first = objects(cell, vocab::rdf("first"));
          auto rest = objects(cell, vocab::rdf("rest"));
          if (first.size() != 1 || rest.size() != 1 || !first[0].is_iri())
            throw SchemaError(Code::invalid_chain, iri + " has a malformed chain list");
          def.chain.push_back(first[0].value());
          cell = rest[0];
        }
        if (def.chain.size() < 2) throw SchemaError(Code::invalid_chain, iri + " has a property chain shorter than 2");
      }
      schema.properties_.emplace(iri, std::move(def));
      declared.insert(iri);
    }
  }

  for (const auto& t : store.match({std::nullopt, rdf::Term::iri(vocab::type()), std::nullopt})) {
    if (!t.subject().is_iri() || !t.object().is_iri()) continue;
    const std::string& iri = t.subject().value();
    const std::string& cls = t.object().value();
    if (detail::meta_classes().contains(cls) || declared.contains(iri)) continue;
    auto [it, inserted] = schema.individuals_.emplace(iri, cls);
    if (!inserted && it->second != cls)
      throw SchemaError(Code::invalid_declaration, "individual " + iri + " is typed with more than one class");
  }

  schema.finalize();
  return schema;
}

inline OntologySchema load_schema(std::string_view manifest) {
  return load_schema_triples(rdf::parse_turtle(manifest));
}

inline OntologySchema load_schema_file(const std::string& path) { return load_schema(rdf::read_file(path)); }

// Counts that describe the size and annotation coverage of a schema.
struct SchemaStats {
  std::size_t modules = 0;
  std::size_t classes = 0;
  std::size_t object_properties = 0;
  std::size_t datatype_properties = 0;
  std::size_t individuals = 0;
  std::size_t disjointness_axioms = 0;
  std::size_t disjoint_pairs = 0;
  std::size_t property_chains = 0;
  std::size_t inverse_pairs = 0;
  std::size_t labelled = 0;
  std::size_t commented = 0;
  std::map<std::string, std::size_t> classes_per_module;
  std::map<std::string, std::size_t> individuals_per_class;
};

inline SchemaStats compute_schema_stats(const OntologySchema& schema) {
  SchemaStats s;
  s.modules = schema.modules().size();
  s.classes = schema.classes().size();
  for (const auto& [iri, def] : schema.classes()) {
    ++s.classes_per_module[def.module];
    s.labelled += def.label.empty() ? 0 : 1;
    s.commented += def.comment.empty() ? 0 : 1;
  }
  for (const auto& [iri, def] : schema.properties()) {
    (def.kind == PropertyKind::object ? s.object_properties : s.datatype_properties) += 1;
    s.property_chains += def.chain.empty() ? 0 : 1;
    s.inverse_pairs += def.inverse && iri < *def.inverse ? 1 : 0;
    s.labelled += def.label.empty() ? 0 : 1;
    s.commented += def.comment.empty() ? 0 : 1;
  }
  s.individuals = schema.individuals().size();
  for (const auto& [iri, cls] : schema.individuals()) ++s.individuals_per_class[cls];
  s.disjointness_axioms = schema.declared_disjointness().size();
  s.disjoint_pairs = schema.disjoint_pairs().size();
  return s;
}

}  // namespace arco::ontology
