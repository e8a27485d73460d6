#include <gtest/gtest.h>

#include <filesystem>
#include <regex>

#include "arco/rdf/ntriples.hpp"
#include "arco/rdfizer/rdfizer.hpp"
#include "arco/reasoner/reasoner.hpp"
#include "arco/vocab.hpp"
#include "support/oracles.hpp"
#include "support/paths.hpp"

using namespace arco;
using rdf::Term;
using rdf::Triple;
using rdfizer::parse_record_xml;

namespace {

std::vector<Triple> convert(const std::string& xml, const rdfizer::ConvertOptions& options = {},
                            std::vector<std::string>* warnings = nullptr) {
  return rdfizer::to_rdf(parse_record_xml(xml, warnings), rdfizer::default_mapping(), options, warnings);
}

std::size_t count(const rdf::TripleStore& store, const std::string& predicate, const std::optional<Term>& object = {}) {
  return store.match({std::nullopt, Term::iri(predicate), object}).size();
}

std::size_t count_typed(const rdf::TripleStore& store, const std::string& cls) {
  return count(store, vocab::type(), Term::iri(cls));
}

std::string res(const std::string& local) { return std::string(vocab::resource_base) + local; }

}  // namespace

TEST(Record, MinimalRecordHasOneVersion) {
  const auto r = parse_record_xml(R"(<record id="X1" type="OA"/>)");
  EXPECT_EQ(r.id, "X1");
  EXPECT_EQ(r.versions, std::vector<std::string>{"1"});
  // Property type, record type, record link, version type, version link, version label.
  EXPECT_EQ(rdfizer::to_rdf(r, rdfizer::default_mapping()).size(), 6u);
}

TEST(Record, FieldsParsed) {
  const auto r = parse_record_xml(rdf::read_file(paths::data("records/fig2/0700123.xml")));
  EXPECT_EQ(r.type_code, "OA");
  EXPECT_EQ(r.title, "Ritratto di donna");
  EXPECT_EQ(r.materials, std::vector<std::string>{"carta"});
  EXPECT_EQ(r.techniques, std::vector<std::string>{"pittura a olio"});
  EXPECT_TRUE(r.locations.empty());
}

TEST(Record, LocationsAndDates) {
  const auto r = parse_record_xml(R"(<record id="L" type="A">
    <location type="history" from="1566">Vicenza</location>
    <location type="exhibition" from="2006-03-01" to="2007">Mantova</location>
  </record>)");
  ASSERT_EQ(r.locations.size(), 2u);
  EXPECT_EQ(r.locations[0].from, "1566");
  EXPECT_FALSE(r.locations[0].to);
  EXPECT_EQ(r.locations[1].place, "Mantova");
  rdf::TripleStore store(rdfizer::to_rdf(r, rdfizer::default_mapping()));
  EXPECT_EQ(count_typed(store, vocab::loc("TimeIndexedTypedLocation")), 2u);
  EXPECT_TRUE(store.contains(Triple(Term::iri(res("TimeIndexedTypedLocation/L-1")), Term::iri(vocab::loc("startTime")),
                                    Term::typed_literal("1566", vocab::xsd("gYear")))));
  EXPECT_TRUE(store.contains(Triple(Term::iri(res("TimeIndexedTypedLocation/L-2")), Term::iri(vocab::loc("startTime")),
                                    Term::typed_literal("2006-03-01", vocab::xsd("date")))));
  EXPECT_TRUE(store.contains(Triple(Term::iri(res("TimeIndexedTypedLocation/L-2")),
                                    Term::iri(vocab::loc("hasLocationType")), Term::iri(vocab::loc("Exhibition")))));
}

TEST(Record, ParseErrors) {
  for (const char* xml : {
           R"(<record type="OA"/>)",
           R"(<record id="a"/>)",
           R"(<record id="a" type="OA" versions="1 1"/>)",
           R"(<record id="a" type="OA"><title>  </title></record>)",
           R"(<record id="a" type="OA"><author kind="robot">x</author></record>)",
           R"(<record id="a" type="OA"><measurement type="h">-3</measurement></record>)",
           R"(<record id="a" type="OA"><measurement type="h">12,5</measurement></record>)",
           R"(<record id="a" type="OA"><measurement>3</measurement></record>)",
           R"(<record id="a" type="OA"><location>Roma</location></record>)",
           R"(<record id="a" type="OA"><location type="storage" from="12-2001">Roma</location></record>)",
           R"(<record id="a" type="OA"><location type="storage" to="2001-13-01">Roma</location></record>)",
           R"(<other id="a" type="OA"/>)",
           R"(<record id="a" type="OA">)",
       })
    EXPECT_THROW(parse_record_xml(xml), ParseError) << xml;
}

TEST(Record, KnownTypeCodes) {
  const auto codes = rdfizer::default_mapping().type_codes();
  rdfizer::RecordParseOptions options{&codes};
  EXPECT_THROW(parse_record_xml(R"(<record id="a" type="XYZ"/>)", nullptr, options), ParseError);
  EXPECT_NO_THROW(parse_record_xml(R"(<record id="a" type="MI"/>)", nullptr, options));
}

TEST(Record, DecimalAndDateHelpers) {
  EXPECT_EQ(rdfizer::parse_decimal("12.5"), 12.5);
  EXPECT_EQ(rdfizer::parse_decimal("0"), 0.0);
  EXPECT_FALSE(rdfizer::parse_decimal("1e5"));
  EXPECT_FALSE(rdfizer::parse_decimal("3."));
  EXPECT_FALSE(rdfizer::parse_decimal(""));
  EXPECT_TRUE(rdfizer::is_iso_date("2020-02-29"));
  EXPECT_FALSE(rdfizer::is_iso_date("2020-2-29"));
  EXPECT_TRUE(rdfizer::is_iso_year("0999"));
}

TEST(Minting, Examples) {
  EXPECT_EQ(rdfizer::mint_iri("CatalogueRecord", "0700123").value(), res("CatalogueRecord/0700123"));
  EXPECT_EQ(rdfizer::mint_iri("Technique", "pittura a olio").value(), res("Technique/pittura%20a%20olio"));
  EXPECT_EQ(rdfizer::mint_iri("Place", "Città/1").value(), res("Place/Citt%C3%A0%2F1"));
  EXPECT_EQ(rdfizer::percent_encode("a-b.c_d~e"), "a-b.c_d~e");
  EXPECT_THROW(rdfizer::mint_iri("Place", ""), std::invalid_argument);
}

TEST(Minting, SharedIndividualsKeyedByNormalizedLabel) {
  EXPECT_EQ(rdfizer::mint_shared("Material", "carta"), rdfizer::mint_shared("Material", "  Carta "));
  EXPECT_EQ(rdfizer::mint_shared("Material", "carta").value(), res("Material/carta"));
  EXPECT_NE(rdfizer::mint_shared("Material", "carta"), rdfizer::mint_shared("Technique", "carta"));
}

TEST(Minting, EncodedIrisAreValidAndInjective) {
  std::set<std::string> seen;
  for (const std::string id : {"a b", "a%20b", "a+b", "a/b", "a?b", "a#b", "è", "e", "<x>", "\"q\""}) {
    const std::string iri = rdfizer::mint_iri("K", id).value();
    EXPECT_TRUE(seen.insert(iri).second) << id;
    for (char c : iri.substr(vocab::resource_base.size())) EXPECT_FALSE(c == ' ' || c == '<' || c == '"') << iri;
  }
}

TEST(Conversion, Deterministic) {
  const std::string xml = rdf::read_file(paths::data("records/extra/complex.xml"));
  EXPECT_EQ(convert(xml), convert(xml));
}

TEST(Conversion, FigureRecordMatchesExpectedTriples) {
  const auto got = convert(rdf::read_file(paths::data("records/fig2/0700123.xml")));
  const auto expected = rdf::parse_ntriples(rdf::read_file(paths::data("expected/fig2.nt")));
  EXPECT_EQ(oracle::as_set(got), oracle::as_set(expected));
}

TEST(Conversion, FigureShortcutsAfterMaterialization) {
  rdf::TripleStore store(convert(rdf::read_file(paths::data("records/fig2/0700123.xml"))));
  reasoner::materialize_in_place(store, paths::schema());
  for (const auto& t : rdf::parse_ntriples(rdf::read_file(paths::data("expected/fig2-shortcuts.nt"))))
    EXPECT_TRUE(store.contains(t)) << t.to_string();
  EXPECT_EQ(count(store, vocab::arco("hasMaterial")), 1u);
  EXPECT_EQ(count(store, vocab::arco("hasTechnique")), 1u);
}

TEST(Conversion, VersionChainIsSimplePath) {
  rdf::TripleStore store(convert(R"(<record id="V" type="OA" versions="1 2 3"/>)"));
  EXPECT_EQ(count(store, vocab::cat("hasCatalogueRecordVersion")), 3u);
  const auto next = store.match({std::nullopt, Term::iri(vocab::cat("hasNextVersion")), std::nullopt});
  ASSERT_EQ(next.size(), 2u);
  std::map<std::string, std::string> succ;
  std::set<std::string> targets;
  for (const auto& t : next) {
    succ[t.subject().value()] = t.object().value();
    targets.insert(t.object().value());
  }
  std::string at = res("CatalogueRecordVersion/V-1");
  EXPECT_FALSE(targets.contains(at));
  std::vector<std::string> path{at};
  while (succ.contains(at)) path.push_back(at = succ[at]);
  EXPECT_EQ(path, (std::vector<std::string>{res("CatalogueRecordVersion/V-1"), res("CatalogueRecordVersion/V-2"),
                                            res("CatalogueRecordVersion/V-3")}));
}

TEST(Conversion, MeasurementTriples) {
  rdf::TripleStore store(convert(R"(<record id="M" type="OA"><measurement type="height" unit="cm">12.50</measurement></record>)"));
  const Term node = rdfizer::mint_shared("Measurement", "height 12.50 cm");
  EXPECT_TRUE(store.contains(Triple(node, Term::iri(vocab::dd("hasValue")), Term::typed_literal("12.50", vocab::xsd("decimal")))));
  EXPECT_TRUE(store.contains(Triple(node, Term::iri(vocab::dd("hasMeasurementUnit")), Term::literal("cm"))));
  EXPECT_TRUE(store.contains(Triple(node, Term::iri(vocab::type()), Term::iri(vocab::dd("Measurement")))));
}

TEST(Conversion, AuthorsAndRoles) {
  rdf::TripleStore store(convert(R"(<record id="A" type="OA">
    <author role="painter" kind="person">Tiziano</author>
    <author kind="organization">Bottega</author>
    <author>Ignoto</author></record>)"));
  EXPECT_EQ(count_typed(store, vocab::cd("AuthorshipAttribution")), 3u);
  EXPECT_EQ(count_typed(store, vocab::core("Person")), 1u);
  EXPECT_EQ(count_typed(store, vocab::core("Organization")), 1u);
  EXPECT_EQ(count_typed(store, vocab::core("Agent")), 1u);
  EXPECT_EQ(count_typed(store, vocab::core("Role")), 1u);
}

TEST(Conversion, UnmappedValuesStrictAndLenient) {
  const std::string xml = rdf::read_file(paths::data("records/extra/unmapped.xml"));
  rdfizer::ConvertOptions strict{true};
  EXPECT_THROW(convert(xml, strict), rdfizer::MappingError);
  std::vector<std::string> warnings;
  rdf::TripleStore store(convert(xml, {}, &warnings));
  EXPECT_EQ(warnings.size(), 2u);
  EXPECT_EQ(count_typed(store, vocab::arco("CulturalProperty")), 1u);
  EXPECT_EQ(count(store, vocab::loc("hasLocationType"), Term::iri(vocab::loc("Unspecified"))), 1u);
}

TEST(Conversion, UnknownElementWarns) {
  std::vector<std::string> warnings;
  const auto r = parse_record_xml(rdf::read_file(paths::data("records/extra/complex.xml")), &warnings);
  EXPECT_EQ(warnings.size(), 2u);
  bool inscription = false;
  for (const auto& w : warnings) inscription = inscription || w.find("<inscription>") != std::string::npos;
  EXPECT_TRUE(inscription);
  EXPECT_EQ(r.components.size(), 2u);
  EXPECT_EQ(r.versions, (std::vector<std::string>{"1", "2"}));
}

TEST(Conversion, ComponentsBecomeParts) {
  rdf::TripleStore store(convert(rdf::read_file(paths::data("records/extra/complex.xml"))));
  const Term whole = Term::iri(res("HistoricOrArtisticProperty/0500999001"));
  EXPECT_TRUE(store.contains(Triple(whole, Term::iri(vocab::type()), Term::iri(vocab::arco("ComplexCulturalProperty")))));
  EXPECT_EQ(store.match({whole, Term::iri(vocab::arco("hasCulturalPropertyComponent")), std::nullopt}).size(), 2u);
  EXPECT_EQ(count_typed(store, vocab::loc("CadastralIdentity")), 1u);
  // Shared material individual for both components.
  EXPECT_EQ(count_typed(store, vocab::dd("Material")), 1u);
  reasoner::materialize_in_place(store, paths::schema());
  EXPECT_TRUE(reasoner::check_consistency(store, paths::schema()).empty());
}

TEST(Conversion, DuplicateIdsRejected) {
  const auto a = parse_record_xml(R"(<record id="D" type="OA"/>)");
  EXPECT_THROW(rdfizer::convert_corpus({a, a}, rdfizer::default_mapping()), rdfizer::MappingError);
}

TEST(Conversion, MalformedFileNamedInError) {
  const auto dir = std::filesystem::temp_directory_path() / "arco-malformed";
  std::filesystem::create_directories(dir);
  rdf::write_file((dir / "bad.xml").string(), "<record id='x' type='OA'><title>t</record>");
  try {
    rdfizer::load_corpus_dir(dir.string());
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("bad.xml"), std::string::npos);
  }
  std::filesystem::remove_all(dir);
  EXPECT_THROW(rdfizer::load_corpus_dir((dir / "missing").string()), IoError);
}

// Counts taken from the raw XML text, independently of the parser.
TEST(Conversion, FixtureCompleteness) {
  const auto dir = paths::data("records/fixture");
  std::size_t locations = 0, authors = 0, versions = 0, records = 0, cadastral = 0;
  const std::regex versions_attr(R"re(versions="([^"]*)")re");
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const std::string xml = rdf::read_file(entry.path().string());
    ++records;
    auto occurrences = [&](const std::string& needle) {
      std::size_t n = 0;
      for (auto at = xml.find(needle); at != std::string::npos; at = xml.find(needle, at + 1)) ++n;
      return n;
    };
    locations += occurrences("<location ");
    authors += occurrences("<author");
    cadastral += occurrences("<cadastral>");
    std::smatch m;
    if (std::regex_search(xml, m, versions_attr)) {
      std::istringstream in(m[1].str());
      for (std::string v; in >> v;) ++versions;
    } else {
      ++versions;
    }
  }
  std::vector<std::string> warnings;
  rdf::TripleStore store(rdfizer::convert_corpus(rdfizer::load_corpus_dir(dir, &warnings), rdfizer::default_mapping(),
                                                 rdfizer::ConvertOptions{true}));
  EXPECT_TRUE(warnings.empty());
  EXPECT_EQ(count_typed(store, vocab::cat("CatalogueRecord")), records);
  EXPECT_EQ(count_typed(store, vocab::loc("TimeIndexedTypedLocation")), locations);
  EXPECT_EQ(count_typed(store, vocab::cd("AuthorshipAttribution")), authors);
  EXPECT_EQ(count_typed(store, vocab::cat("CatalogueRecordVersion")), versions);
  EXPECT_EQ(count(store, vocab::loc("hasCadastralIdentity")), cadastral);
  reasoner::materialize_in_place(store, paths::schema());
  EXPECT_EQ(count_typed(store, vocab::arco("CulturalProperty")), records);
  EXPECT_TRUE(reasoner::check_consistency(store, paths::schema()).empty());
}

TEST(Mapping, BundledFileEqualsDefaultsPlusSynonyms) {
  const auto m = rdfizer::load_mapping_file(paths::data("mapping/default-mapping.txt"));
  EXPECT_EQ(m.type_classes, rdfizer::default_mapping().type_classes);
  ASSERT_NE(m.location_for("Place of finding"), nullptr);
  EXPECT_EQ(*m.location_for("Place of finding"), vocab::loc("Finding"));
  EXPECT_NO_THROW(rdfizer::validate_mapping(m, paths::schema()));
}

TEST(Mapping, ResetAndErrors) {
  const auto m = rdfizer::load_mapping("reset\ntype X :MusicHeritage\n");
  EXPECT_EQ(m.type_classes.size(), 1u);
  EXPECT_TRUE(m.location_types.empty());
  EXPECT_THROW(rdfizer::load_mapping("type X\n"), ParseError);
  EXPECT_THROW(rdfizer::load_mapping("type X nope:Y\n"), ParseError);
  EXPECT_THROW(rdfizer::load_mapping("type X :A\nreset\n"), ParseError);
  EXPECT_THROW(rdfizer::validate_mapping(rdfizer::load_mapping("type X core:Person\n"), paths::schema()),
               rdfizer::MappingError);
  EXPECT_THROW(rdfizer::validate_mapping(rdfizer::load_mapping("location odd a-loc:Nowhere\n"), paths::schema()),
               rdfizer::MappingError);
}

TEST(Mapping, DefaultsValidateAgainstSchema) {
  EXPECT_NO_THROW(rdfizer::validate_mapping(rdfizer::default_mapping(), paths::schema()));
  EXPECT_EQ(rdfizer::location_type_names().size(), 24u);
}
