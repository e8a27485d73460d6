#include <gtest/gtest.h>

#include <random>

#include "arco/rdf/ntriples.hpp"
#include "arco/rdf/turtle.hpp"
#include "arco/rdfizer/rdfizer.hpp"
#include "arco/reasoner/reasoner.hpp"
#include "arco/vocab.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "support/paths.hpp"

using namespace arco;
using rdf::Term;
using rdf::Triple;

namespace {

rdf::TripleStore turtle(const std::string& body) {
  rdf::PrefixMap prefixes(vocab::standard_prefixes().begin(), vocab::standard_prefixes().end());
  return rdf::TripleStore(rdf::parse_turtle(body, prefixes));
}

Triple t(const std::string& s, const std::string& p, const std::string& o) {
  return Triple(Term::iri(s), Term::iri(p), Term::iri(o));
}

const std::string kPainting = R"(
data:P a :HistoricOrArtisticProperty ;
  a-dd:hasTechnicalStatus data:S .
data:S a-dd:includesTechnicalCharacteristic data:carta , data:olio .
data:carta a a-dd:Material .
data:olio a a-dd:Technique .
)";

std::string res(const std::string& local) { return std::string(vocab::resource_base) + local; }

// Flips the inverse premises of the material chain into their forward form.
std::vector<Triple> forward_premises(const std::vector<Triple>& input) {
  const Term has_status = Term::iri(vocab::dd("hasTechnicalStatus"));
  const Term includes = Term::iri(vocab::dd("includesTechnicalCharacteristic"));
  std::vector<Triple> out = input;
  for (const auto& x : input) {
    if (x.object().is_literal()) continue;
    if (x.predicate().value() == vocab::dd("isTechnicalStatusOf")) out.emplace_back(x.object(), has_status, x.subject());
    if (x.predicate().value() == vocab::dd("isTechnicalCharacteristicIncludedIn"))
      out.emplace_back(x.object(), includes, x.subject());
  }
  return out;
}

std::set<Triple> with_predicate(const rdf::TripleStore& store, const std::string& predicate) {
  return oracle::as_set(store.match({std::nullopt, Term::iri(predicate), std::nullopt}));
}

}  // namespace

TEST(Reasoner, MaterialShortcutFromChain) {
  const auto out = reasoner::materialize(turtle(kPainting), paths::schema());
  EXPECT_TRUE(out.contains(t(res("P"), vocab::arco("hasMaterial"), res("carta"))));
  EXPECT_TRUE(out.contains(t(res("P"), vocab::arco("hasTechnique"), res("olio"))));
  // The technique does not satisfy the material range.
  EXPECT_FALSE(out.contains(t(res("P"), vocab::arco("hasMaterial"), res("olio"))));
  EXPECT_EQ(with_predicate(out, vocab::arco("hasMaterial")).size(), 1u);
}

TEST(Reasoner, SuperclassTypesInherited) {
  const auto out = reasoner::materialize(turtle(kPainting), paths::schema());
  for (const char* cls : {"MovableCulturalProperty", "TangibleCulturalProperty", "CulturalProperty", "CulturalEntity"})
    EXPECT_TRUE(out.contains(t(res("P"), vocab::type(), vocab::arco(cls)))) << cls;
  EXPECT_FALSE(out.contains(t(res("P"), vocab::type(), vocab::arco("IntangibleCulturalProperty"))));
  EXPECT_TRUE(out.contains(t(res("carta"), vocab::type(), vocab::dd("TechnicalCharacteristic"))));
}

TEST(Reasoner, InversesMaterialized) {
  const auto out = reasoner::materialize(turtle(kPainting), paths::schema());
  EXPECT_TRUE(out.contains(t(res("S"), vocab::dd("isTechnicalStatusOf"), res("P"))));
  EXPECT_TRUE(out.contains(t(res("carta"), vocab::dd("isTechnicalCharacteristicIncludedIn"), res("S"))));
}

TEST(Reasoner, SuperclassesAgreeWithAncestorOracle) {
  const auto& schema = paths::schema();
  std::map<std::string, std::set<std::string>> parents;
  for (const auto& [iri, def] : schema.classes()) parents[iri] = def.parents;
  for (const auto& [iri, def] : schema.classes()) {
    rdf::TripleStore store;
    store.insert(t(res("x"), vocab::type(), iri));
    const auto out = reasoner::materialize(store, schema);
    std::set<std::string> types;
    for (const auto& x : out.match({std::nullopt, Term::iri(vocab::type()), std::nullopt})) types.insert(x.object().value());
    EXPECT_EQ(types, oracle::ancestors(parents, iri)) << iri;
  }
}

TEST(Reasoner, EmptyStoreStaysEmpty) {
  rdf::TripleStore store;
  EXPECT_EQ(reasoner::materialize_in_place(store, paths::schema()), 0u);
  EXPECT_EQ(store.size(), 0u);
}

TEST(Reasoner, IdempotentAndMonotone) {
  std::mt19937 rng(5);
  const auto& schema = paths::schema();
  for (int round = 0; round < 40; ++round) {
    const auto triples = gen::random_material_store(rng, 60);
    const rdf::TripleStore input(triples);
    const auto once = reasoner::materialize(input, schema);
    const auto twice = reasoner::materialize(once, schema);
    ASSERT_EQ(once, twice);
    for (const auto& x : input.match({})) ASSERT_TRUE(once.contains(x));
    // Dropping a premise never adds conclusions.
    std::vector<Triple> smaller = triples;
    if (!smaller.empty()) smaller.erase(smaller.begin() + static_cast<long>(gen::pick(rng, smaller.size())));
    const auto reduced = reasoner::materialize(rdf::TripleStore(smaller), schema);
    for (const auto& x : reduced.match({})) ASSERT_TRUE(once.contains(x)) << x.to_string();
  }
}

TEST(Reasoner, ShortcutsEqualJoinOracle) {
  std::mt19937 rng(2024);
  const auto& schema = paths::schema();
  const Term type = Term::iri(vocab::type());
  for (int round = 0; round < 60; ++round) {
    const auto triples = gen::random_material_store(rng, 1 + gen::pick(rng, 200));
    const auto premises = forward_premises(triples);
    const auto out = reasoner::materialize(rdf::TripleStore(triples), schema);
    for (const auto& [shortcut, range] : {std::pair{"hasMaterial", "Material"}, std::pair{"hasTechnique", "Technique"}}) {
      const auto expected = oracle::chain_join(premises, Term::iri(vocab::dd("hasTechnicalStatus")),
                                               Term::iri(vocab::dd("includesTechnicalCharacteristic")),
                                               Term::iri(vocab::dd(range)), Term::iri(vocab::arco(shortcut)), type);
      ASSERT_EQ(with_predicate(out, vocab::arco(shortcut)), expected) << shortcut << " round " << round;
    }
  }
}

TEST(Reasoner, UnrestrictedChainsIgnoreRange) {
  reasoner::MaterializeOptions options;
  options.chains = reasoner::ChainSemantics::unrestricted;
  const auto out = reasoner::materialize(turtle(kPainting), paths::schema(), options);
  EXPECT_TRUE(out.contains(t(res("P"), vocab::arco("hasMaterial"), res("olio"))));
  EXPECT_TRUE(out.contains(t(res("P"), vocab::arco("hasShape"), res("carta"))));
}

TEST(Reasoner, ChainOverInferredInverse) {
  const auto out = reasoner::materialize(turtle(R"(
data:S a-dd:isTechnicalStatusOf data:P .
data:c a-dd:isTechnicalCharacteristicIncludedIn data:S ; a a-dd:Material .
)"),
                                         paths::schema());
  EXPECT_TRUE(out.contains(t(res("P"), vocab::arco("hasMaterial"), res("c"))));
}

TEST(Consistency, TangibleAndIntangible) {
  const auto store = turtle("data:x a :TangibleCulturalProperty , :IntangibleCulturalProperty .");
  const auto v = reasoner::check_consistency(store, paths::schema());
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, reasoner::ViolationKind::disjointness);
  EXPECT_EQ(v[0].entity, Term::iri(res("x")));
  EXPECT_EQ(std::set<std::string>({v[0].first_class, v[0].second_class}),
            std::set<std::string>({vocab::arco("TangibleCulturalProperty"), vocab::arco("IntangibleCulturalProperty")}));
}

TEST(Consistency, MovableAndIntangibleFoldedAfterMaterialization) {
  const auto store = reasoner::materialize(turtle("data:x a :MovableCulturalProperty , :IntangibleCulturalProperty ."),
                                           paths::schema());
  const auto v = reasoner::check_consistency(store, paths::schema());
  ASSERT_EQ(v.size(), 1u);
  const std::set<std::string> pair{v[0].first_class, v[0].second_class};
  EXPECT_TRUE(pair.contains(vocab::arco("IntangibleCulturalProperty")));
  EXPECT_TRUE(paths::schema().are_disjoint(v[0].first_class, v[0].second_class));
}

TEST(Consistency, RematerializeOption) {
  const auto store = turtle("data:x a :PhotographicHeritage , :IntangibleCulturalProperty .");
  reasoner::ConsistencyOptions options;
  options.rematerialize = true;
  EXPECT_EQ(reasoner::check_consistency(store, paths::schema(), options).size(), 1u);
}

TEST(Consistency, ViolationsMatchPairOracle) {
  const auto& schema = paths::schema();
  std::mt19937 rng(77);
  std::vector<std::string> classes;
  for (const auto& [iri, def] : schema.classes()) classes.push_back(iri);
  for (int round = 0; round < 100; ++round) {
    const std::string a = classes[gen::pick(rng, classes.size())], b = classes[gen::pick(rng, classes.size())];
    rdf::TripleStore store;
    store.insert(t(res("x"), vocab::type(), a));
    store.insert(t(res("x"), vocab::type(), b));
    const auto v = reasoner::check_consistency(store, schema);
    const bool clash = a != b && schema.disjoint_pairs().contains(std::minmax(a, b));
    ASSERT_EQ(v.size(), clash ? 1u : 0u) << a << " " << b;
  }
}

TEST(Consistency, ConvertedFixtureIsClean) {
  const auto records = rdfizer::load_corpus_dir(paths::data("records/fixture"));
  rdf::TripleStore store(rdfizer::convert_corpus(records, rdfizer::default_mapping()));
  reasoner::materialize_in_place(store, paths::schema());
  reasoner::ConsistencyOptions options;
  options.include_domain_range = true;
  EXPECT_TRUE(reasoner::check_consistency(store, paths::schema(), options).empty());
}

TEST(Consistency, DomainClashReportedOnlyWhenRequested) {
  const auto store = reasoner::materialize(turtle("data:x a core:Person ; a-dd:hasTechnicalStatus data:s ."),
                                           paths::schema());
  EXPECT_TRUE(reasoner::check_consistency(store, paths::schema()).empty());
  reasoner::ConsistencyOptions options;
  options.include_domain_range = true;
  const auto full = reasoner::check_consistency(store, paths::schema(), options);
  ASSERT_EQ(full.size(), 1u);
  EXPECT_EQ(full[0].kind, reasoner::ViolationKind::domain_clash);
  EXPECT_EQ(full[0].first_class, vocab::arco("CulturalEntity"));
}

TEST(Consistency, Reports) {
  const auto store = turtle("data:x a :TangibleCulturalProperty , :IntangibleCulturalProperty .");
  const auto v = reasoner::check_consistency(store, paths::schema());
  const std::string text = reasoner::render_text(v);
  EXPECT_EQ(text.rfind("disjointness\t<" + res("x") + ">", 0), 0u);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1);
  const auto json = reasoner::to_json(v);
  EXPECT_EQ(json["count"], 1);
  EXPECT_EQ(json["violations"][0]["kind"], "disjointness");
  EXPECT_EQ(reasoner::to_json({})["count"], 0);
}
