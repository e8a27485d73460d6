#include <gtest/gtest.h>

#include <random>

#include "arco/linker/linker.hpp"
#include "arco/rdf/ntriples.hpp"
#include "arco/rdf/turtle.hpp"
#include "arco/rdfizer/rdfizer.hpp"
#include "arco/reasoner/reasoner.hpp"
#include "arco/vocab.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "support/paths.hpp"

using namespace arco;
using linker::tokenize_label;
using rdf::Term;
using rdf::Triple;

namespace {

rdf::TripleStore fixture_store() {
  rdf::TripleStore store(rdfizer::convert_corpus(rdfizer::load_corpus_dir(paths::data("records/fixture")),
                                                 rdfizer::default_mapping()));
  reasoner::materialize_in_place(store, paths::schema());
  return store;
}

rdf::TripleStore target_store() {
  rdf::TripleStore store(rdf::parse_turtle(rdf::read_file(paths::data("linker/target.ttl"))));
  reasoner::materialize_in_place(store, paths::schema());
  return store;
}

void add_entity(rdf::TripleStore& store, const std::string& iri, const std::string& cls,
                const std::vector<std::string>& labels) {
  store.insert(Triple(Term::iri(iri), Term::iri(vocab::type()), Term::iri(cls)));
  for (const auto& l : labels) store.insert(Triple(Term::iri(iri), Term::iri(vocab::label()), Term::literal(l)));
}

struct Key {
  std::string source, target;
  double score;
  friend bool operator==(const Key&, const Key&) = default;
};

std::vector<Key> keys(const linker::LinkReport& r) {
  std::vector<Key> out;
  for (const auto& c : r.candidates) out.push_back({c.source.value(), c.target.value(), c.score});
  return out;
}

// Every (source, target) pair of labelled entities sharing a class, scored
// with the set-algebra Jaccard.
std::vector<Key> all_pairs_oracle(const rdf::TripleStore& source, const rdf::TripleStore& target,
                                  const linker::LinkerConfig& config) {
  auto entities = [&](const rdf::TripleStore& store) {
    std::map<std::string, std::pair<std::set<std::string>, std::vector<std::set<std::string>>>> out;
    for (const auto& t : store.match({std::nullopt, Term::iri(vocab::type()), std::nullopt}))
      if (config.classes.contains(t.object().value()) && t.subject().is_iri())
        out[t.subject().value()].first.insert(t.object().value());
    for (auto& [iri, e] : out)
      for (const auto& t : store.match({Term::iri(iri), Term::iri(config.label_predicate), std::nullopt}))
        if (t.object().is_literal()) e.second.push_back(tokenize_label(t.object().value()));
    return out;
  };
  const auto left = entities(source), right = entities(target);
  std::vector<Key> out;
  for (const auto& [a, ea] : left) {
    for (const auto& [b, eb] : right) {
      if (a == b || ea.second.empty() || eb.second.empty()) continue;
      bool shared = false;
      for (const auto& c : ea.first) shared = shared || eb.first.contains(c);
      if (!shared) continue;
      double best = 0;
      for (const auto& x : ea.second)
        for (const auto& y : eb.second) best = std::max(best, oracle::set_jaccard(x, y));
      if (best >= config.threshold) out.push_back({a, b, best});
    }
  }
  return out;
}

}  // namespace

TEST(Tokenize, Examples) {
  EXPECT_EQ(tokenize_label("Città di Roma — 1871"), (linker::TokenSet{"città", "di", "roma", "1871"}));
  EXPECT_EQ(tokenize_label("Galilei, Galileo"), (linker::TokenSet{"galilei", "galileo"}));
  EXPECT_EQ(tokenize_label("ROMA roma"), linker::TokenSet{"roma"});
  EXPECT_TRUE(tokenize_label("").empty());
  EXPECT_TRUE(tokenize_label(" -- , ").empty());
}

TEST(Jaccard, Examples) {
  EXPECT_DOUBLE_EQ(linker::jaccard(tokenize_label("Roma"), tokenize_label("Roma Capitale")), 0.5);
  EXPECT_DOUBLE_EQ(linker::jaccard(tokenize_label("Roma"), tokenize_label("roma")), 1.0);
  EXPECT_DOUBLE_EQ(linker::jaccard(tokenize_label("a b"), tokenize_label("c d")), 0.0);
  EXPECT_DOUBLE_EQ(linker::jaccard({}, {}), 1.0);
  EXPECT_DOUBLE_EQ(linker::jaccard({}, tokenize_label("x")), 0.0);
}

TEST(Jaccard, AgreesWithSetAlgebra) {
  std::mt19937 rng(3);
  const std::vector<std::string> words = {"a", "b", "c", "d", "e", "f"};
  for (int i = 0; i < 500; ++i) {
    linker::TokenSet a, b;
    for (const auto& w : words) {
      if (gen::coin(rng, 0.4)) a.insert(w);
      if (gen::coin(rng, 0.4)) b.insert(w);
    }
    const double j = linker::jaccard(a, b);
    ASSERT_DOUBLE_EQ(j, oracle::set_jaccard(a, b));
    ASSERT_DOUBLE_EQ(j, linker::jaccard(b, a));
    ASSERT_GE(j, 0.0);
    ASSERT_LE(j, 1.0);
  }
}

TEST(Linker, ThresholdIsInclusive) {
  rdf::TripleStore source, target;
  add_entity(source, "urn:s:roma", vocab::loc("Place"), {"Roma"});
  add_entity(target, "urn:t:roma", vocab::loc("Place"), {"Roma Capitale"});
  linker::LinkerConfig config;
  EXPECT_TRUE(linker::discover(source, target, config).candidates.empty());
  config.threshold = 0.5;
  const auto report = linker::discover(source, target, config);
  ASSERT_EQ(report.candidates.size(), 1u);
  EXPECT_DOUBLE_EQ(report.candidates[0].score, 0.5);
  EXPECT_EQ(linker::to_same_as(report.candidates)[0],
            Triple(Term::iri("urn:s:roma"), Term::iri(vocab::same_as()), Term::iri("urn:t:roma")));
}

TEST(Linker, ExactLabelLinks) {
  rdf::TripleStore source, target;
  add_entity(source, "urn:s:roma", vocab::loc("Place"), {"Roma"});
  add_entity(target, "urn:t:roma", vocab::loc("Place"), {"Rome", "ROMA"});
  const auto links = linker::discover_links(source, target);
  ASSERT_EQ(links.size(), 1u);
  EXPECT_EQ(links[0].object(), Term::iri("urn:t:roma"));
}

TEST(Linker, ClassesMustBeShared) {
  rdf::TripleStore source, target;
  add_entity(source, "urn:s:roma", vocab::loc("Place"), {"Roma"});
  add_entity(target, "urn:t:roma", vocab::core("Agent"), {"Roma"});
  EXPECT_TRUE(linker::discover(source, target).candidates.empty());
}

TEST(Linker, NoSelfLinks) {
  rdf::TripleStore store;
  add_entity(store, "urn:x", vocab::loc("Place"), {"Roma"});
  add_entity(store, "urn:y", vocab::loc("Place"), {"Roma"});
  const auto report = linker::discover(store, store);
  EXPECT_EQ(report.candidates.size(), 2u);
  for (const auto& c : report.candidates) EXPECT_NE(c.source, c.target);
}

TEST(Linker, EmptyInputs) {
  const auto report = linker::discover(rdf::TripleStore{}, rdf::TripleStore{});
  EXPECT_EQ(report.pairs_scored, 0u);
  EXPECT_TRUE(report.candidates.empty());
}

TEST(Linker, FixtureAgainstAuthorityFile) {
  const auto source = fixture_store();
  const auto target = target_store();
  const auto config = linker::load_config(rdf::read_file(paths::data("linker/linker.conf")));
  const auto report = linker::discover(source, target, config);
  const auto expected = rdf::parse_ntriples(rdf::read_file(paths::data("expected/links-0.9.nt")));
  EXPECT_EQ(oracle::as_set(linker::to_same_as(report.candidates)), oracle::as_set(expected));
  EXPECT_EQ(report.skipped_unlabelled, 1u);
  for (const auto& c : report.candidates) EXPECT_GE(c.score, 0.9);
  const auto json = report.to_json();
  EXPECT_EQ(json["links_emitted"], expected.size());
  EXPECT_EQ(json["links"].size(), expected.size());
}

TEST(Linker, LowerThresholdNeverLosesLinks) {
  const auto source = fixture_store();
  const auto target = target_store();
  std::set<std::pair<std::string, std::string>> previous;
  for (double threshold : {1.0, 0.9, 0.7, 0.5, 0.3, 0.1, 0.0}) {
    linker::LinkerConfig config;
    config.threshold = threshold;
    std::set<std::pair<std::string, std::string>> now;
    for (const auto& c : linker::discover(source, target, config).candidates) now.emplace(c.source.value(), c.target.value());
    EXPECT_TRUE(std::includes(now.begin(), now.end(), previous.begin(), previous.end())) << threshold;
    previous = now;
  }
}

TEST(Linker, BlockingEqualsAllPairs) {
  std::mt19937 rng(8);
  const std::vector<std::string> words = {"roma", "citta", "di", "san", "marco", "1871", "città", "villa"};
  auto label = [&] {
    std::string out;
    const std::size_t n = gen::pick(rng, 4);
    for (std::size_t i = 0; i < n; ++i) out += (i ? " " : "") + words[gen::pick(rng, words.size())];
    return gen::coin(rng, 0.1) ? std::string("--") : out;
  };
  const std::vector<std::string> classes = {vocab::loc("Place"), vocab::core("Agent"), vocab::dd("Material")};
  for (int round = 0; round < 40; ++round) {
    rdf::TripleStore source, target;
    for (int i = 0; i < 12; ++i) {
      std::vector<std::string> l1, l2;
      for (std::size_t k = gen::pick(rng, 3); k > 0; --k) l1.push_back(label());
      for (std::size_t k = gen::pick(rng, 3); k > 0; --k) l2.push_back(label());
      add_entity(source, "urn:e:" + std::to_string(gen::pick(rng, 20)), classes[gen::pick(rng, 3)], l1);
      add_entity(target, "urn:e:" + std::to_string(gen::pick(rng, 20)), classes[gen::pick(rng, 3)], l2);
    }
    linker::LinkerConfig config;
    config.threshold = std::vector<double>{0.0, 0.25, 0.5, 0.9, 1.0}[gen::pick(rng, 5)];
    const auto got = keys(linker::discover(source, target, config));
    const auto want = all_pairs_oracle(source, target, config);
    ASSERT_EQ(got.size(), want.size()) << "round " << round;
    for (std::size_t i = 0; i < got.size(); ++i) {
      ASSERT_EQ(got[i].source, want[i].source);
      ASSERT_EQ(got[i].target, want[i].target);
      ASSERT_NEAR(got[i].score, want[i].score, 1e-12);
    }
  }
}

TEST(LinkerConfig, Parsing) {
  const auto c = linker::load_config("# comment\nthreshold = 0.75\nclasses = places, core:Person\n");
  EXPECT_DOUBLE_EQ(c.threshold, 0.75);
  EXPECT_EQ(c.classes, (std::set<std::string>{vocab::loc("Place"), vocab::core("Person")}));
  EXPECT_EQ(c.label_predicate, vocab::label());
  EXPECT_THROW(linker::load_config("threshold = 1.5\n"), Error);
  EXPECT_THROW(linker::load_config("threshold = abc\n"), ParseError);
  EXPECT_THROW(linker::load_config("colour = red\n"), ParseError);
  EXPECT_THROW(linker::load_config("no equals sign\n"), ParseError);
  EXPECT_THROW(linker::parse_class_list("bogus"), Error);
  EXPECT_THROW(linker::parse_class_list(" , "), Error);
  EXPECT_EQ(linker::parse_class_list("<http://example.org/C>"), std::set<std::string>{"http://example.org/C"});
}

TEST(LinkerConfig, HashInsideIriIsNotAComment) {
  const auto c = linker::load_config("label-predicate = <http://www.w3.org/2004/02/skos/core#prefLabel>  # SKOS\n");
  EXPECT_EQ(c.label_predicate, "http://www.w3.org/2004/02/skos/core#prefLabel");
}
