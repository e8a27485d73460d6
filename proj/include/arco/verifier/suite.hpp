#pragma once

#include <algorithm>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "arco/error.hpp"
#include "arco/ontology/schema.hpp"
#include "arco/query/bgp.hpp"
#include "arco/rdf/ntriples.hpp"
#include "arco/rdf/store.hpp"
#include "arco/rdf/turtle.hpp"
#include "arco/reasoner/reasoner.hpp"
#include "arco/text.hpp"
#include "arco/vocab.hpp"

namespace arco::verifier {

enum class CaseKind { inference, error, cq };

inline const char* to_string(CaseKind k) {
  switch (k) {
    case CaseKind::inference: return "inference";
    case CaseKind::error: return "error";
    case CaseKind::cq: return "cq";
  }
  return "?";
}

struct TestCase {
  CaseKind kind = CaseKind::inference;
  std::string name;
  std::string data;  // Turtle (N-Triples is accepted as a subset)
  std::vector<rdf::Triple> entails;
  std::vector<rdf::Triple> not_entails;
  std::size_t min_violations = 0;
  std::string query;
  std::size_t min_results = 0;
};

struct CaseResult {
  CaseKind kind;
  std::string name;
  bool passed;
  std::string detail;
};

struct SuiteReport {
  std::vector<CaseResult> results;

  std::size_t count(CaseKind k) const {
    return static_cast<std::size_t>(std::count_if(results.begin(), results.end(), [&](auto& r) { return r.kind == k; }));
  }
  std::size_t passed(CaseKind k) const {
    return static_cast<std::size_t>(
        std::count_if(results.begin(), results.end(), [&](auto& r) { return r.kind == k && r.passed; }));
  }
  bool all_passed() const {
    return std::all_of(results.begin(), results.end(), [](auto& r) { return r.passed; });
  }

  std::string render_text() const {
    std::ostringstream out;
    for (const auto& r : results)
      out << (r.passed ? "PASS " : "FAIL ") << to_string(r.kind) << '/' << r.name
          << (r.detail.empty() ? "" : "  " + r.detail) << '\n';
    for (CaseKind k : {CaseKind::inference, CaseKind::error, CaseKind::cq})
      out << to_string(k) << ": " << passed(k) << '/' << count(k) << " passed\n";
    return out.str();
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    auto& cases = j["cases"] = nlohmann::ordered_json::array();
    for (const auto& r : results)
      cases.push_back({{"kind", to_string(r.kind)}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    for (CaseKind k : {CaseKind::inference, CaseKind::error, CaseKind::cq})
      j["totals"][to_string(k)] = {{"cases", count(k)}, {"passed", passed(k)}};
    return j;
  }
};

namespace detail {

// Parses one triple written in Turtle syntax (without the final '.').
inline rdf::Triple parse_triple_line(const std::string& text, const rdf::PrefixMap& prefixes, std::size_t line) {
  std::vector<rdf::Triple> triples;
  try {
    triples = rdf::parse_turtle(text + " .", prefixes);
  } catch (const ParseError& e) {
    throw ParseError(e.message(), line);
  }
  if (triples.size() != 1) throw ParseError("expected exactly one triple", line);
  return triples.front();
}

}  // namespace detail

// Expectation file, one directive per line ('#' comments):
//   prefix NAME: <IRI>
//   data FILE                    data file, relative to the case directory
//   entails S P O                inference: triple must be entailed
//   not-entails S P O            inference: triple must not be entailed
//   min-violations N             error: at least N violations
//   query TEXT                   cq: query text, may span several lines
//   min-results N                cq: at least N solutions
// Without `data`, NAME.ttl or NAME.nt next to NAME.expect is used.
inline TestCase load_case(const std::filesystem::path& expect_file, CaseKind kind) {
  TestCase c;
  c.kind = kind;
  c.name = expect_file.stem().string();
  const std::string content = rdf::read_file(expect_file.string());
  rdf::PrefixMap prefixes = vocab::standard_prefixes();
  std::optional<std::filesystem::path> data;
  bool has_min = false;
  std::istringstream in(content);
  std::size_t number = 0;
  auto fail = [&](const std::string& message) -> ParseError {
    return ParseError(expect_file.filename().string() + ": " + message, number);
  };
  for (std::string line; std::getline(in, line);) {
    ++number;
    if (!line.empty() && line.front() == '#') continue;
    std::istringstream words(line);
    std::string directive;
    if (!(words >> directive)) continue;
    std::string rest;
    std::getline(words, rest);
    rest = text::collapse_space(rest);
    auto count = [&]() {
      std::size_t used = 0;
      unsigned long n = 0;
      try {
        n = std::stoul(rest, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != rest.size()) throw fail("expected a count after " + directive);
      has_min = true;
      return static_cast<std::size_t>(n);
    };
    if (directive == "prefix") {
      std::istringstream p(rest);
      std::string name, iri;
      p >> name >> iri;
      if (name.empty() || name.back() != ':' || iri.size() < 3 || iri.front() != '<' || iri.back() != '>')
        throw fail("expected 'prefix name: <iri>'");
      prefixes[name.substr(0, name.size() - 1)] = iri.substr(1, iri.size() - 2);
    } else if (directive == "data") {
      data = expect_file.parent_path() / rest;
    } else if (directive == "entails" && kind == CaseKind::inference) {
      c.entails.push_back(detail::parse_triple_line(rest, prefixes, number));
    } else if (directive == "not-entails" && kind == CaseKind::inference) {
      c.not_entails.push_back(detail::parse_triple_line(rest, prefixes, number));
    } else if (directive == "min-violations" && kind == CaseKind::error) {
      c.min_violations = count();
      if (c.min_violations == 0) throw fail("min-violations must be at least 1");
    } else if (directive == "query" && kind == CaseKind::cq) {
      c.query += (c.query.empty() ? "" : "\n") + rest;
    } else if (directive == "min-results" && kind == CaseKind::cq) {
      c.min_results = count();
    } else {
      throw fail("directive '" + directive + "' not valid for a " + std::string(to_string(kind)) + " case");
    }
  }
  if (kind == CaseKind::inference && c.entails.empty() && c.not_entails.empty())
    throw fail("inference case without 'entails'");
  if (kind == CaseKind::error && !has_min) throw fail("error case without 'min-violations'");
  if (kind == CaseKind::cq && (c.query.empty() || !has_min)) throw fail("cq case needs 'query' and 'min-results'");
  // Query prefixes declared in the expectation file apply to the query too.
  if (kind == CaseKind::cq) {
    std::string decls;
    for (const auto& [name, iri] : prefixes) {
      auto std_it = vocab::standard_prefixes().find(name);
      if (std_it == vocab::standard_prefixes().end() || std_it->second != iri)
        decls += "PREFIX " + name + ": <" + iri + ">\n";
    }
    c.query = decls + c.query;
  }
  if (!data) {
    for (const char* ext : {".ttl", ".nt"}) {
      auto candidate = expect_file;
      candidate.replace_extension(ext);
      if (std::filesystem::exists(candidate)) {
        data = candidate;
        break;
      }
    }
  }
  if (!data) throw fail("no data file");
  c.data = rdf::read_file(data->string());
  return c;
}

// Reads SUITE/inference, SUITE/error and SUITE/cq; cases ordered by name.
inline std::vector<TestCase> load_suite(const std::filesystem::path& root) {
  if (!std::filesystem::is_directory(root)) throw IoError("not a directory: " + root.string());
  std::vector<TestCase> cases;
  for (CaseKind kind : {CaseKind::inference, CaseKind::error, CaseKind::cq}) {
    const auto dir = root / to_string(kind);
    if (!std::filesystem::is_directory(dir)) continue;
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir))
      if (e.is_regular_file() && e.path().extension() == ".expect") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) cases.push_back(load_case(f, kind));
  }
  return cases;
}

inline CaseResult run_case(const TestCase& c, const ontology::OntologySchema& schema) {
  CaseResult r{c.kind, c.name, false, {}};
  rdf::TripleStore store;
  try {
    store.insert_all(rdf::parse_turtle(c.data, vocab::standard_prefixes()));
  } catch (const Error& e) {
    r.detail = std::string("data: ") + e.what();
    return r;
  }
  reasoner::materialize_in_place(store, schema);
  switch (c.kind) {
    case CaseKind::inference: {
      std::size_t missing = 0, unexpected = 0;
      for (const auto& t : c.entails) missing += store.contains(t) ? 0 : 1;
      for (const auto& t : c.not_entails) unexpected += store.contains(t) ? 1 : 0;
      r.passed = missing == 0 && unexpected == 0;
      if (!r.passed)
        r.detail = std::to_string(missing) + " missing, " + std::to_string(unexpected) + " unexpected entailments";
      break;
    }
    case CaseKind::error: {
      const auto violations = reasoner::check_consistency(store, schema);
      r.passed = violations.size() >= c.min_violations;
      r.detail = std::to_string(violations.size()) + " violations (need >= " + std::to_string(c.min_violations) + ")";
      break;
    }
    case CaseKind::cq: {
      try {
        const auto solutions = query::evaluate(c.query, store);
        r.passed = solutions.size() >= c.min_results;
        r.detail = std::to_string(solutions.size()) + " results (need >= " + std::to_string(c.min_results) + ")";
      } catch (const ParseError& e) {
        r.detail = std::string("query: ") + e.what();
      }
      break;
    }
  }
  return r;
}

inline SuiteReport run_suite(const std::vector<TestCase>& cases, const ontology::OntologySchema& schema) {
  SuiteReport report;
  for (const auto& c : cases) report.results.push_back(run_case(c, schema));
  return report;
}

}  // namespace arco::verifier
