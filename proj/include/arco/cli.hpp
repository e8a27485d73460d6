#pragma once

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "arco/linker/linker.hpp"
#include "arco/ontology/schema.hpp"
#include "arco/query/bgp.hpp"
#include "arco/query/service.hpp"
#include "arco/rdf/ntriples.hpp"
#include "arco/rdf/turtle.hpp"
#include "arco/rdfizer/rdfizer.hpp"
#include "arco/reasoner/reasoner.hpp"
#include "arco/verifier/stats.hpp"
#include "arco/verifier/suite.hpp"

namespace arco::cli {

enum Exit : int { ok = 0, failure = 1, usage = 2 };

// Where the bundled schema lives when neither --schema, the config file
// nor ARCO_SCHEMA names one.
inline std::string default_schema_path() {
#ifdef ARCO_DATA_DIR
  return std::string(ARCO_DATA_DIR) + "/schema/arco.ttl";
#else
  return "data/schema/arco.ttl";
#endif
}

// `key = value` lines; '#' comments. Keys are long option names.
inline std::map<std::string, std::string> load_config(const std::string& path) {
  std::map<std::string, std::string> out;
  std::istringstream in(rdf::read_file(path));
  std::size_t number = 0;
  for (std::string line; std::getline(in, line);) {
    ++number;
    line = text::strip_comment(std::move(line));
    line = text::collapse_space(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(path + ": expected key = value", number);
    out[text::collapse_space(line.substr(0, eq))] = text::collapse_space(line.substr(eq + 1));
  }
  return out;
}

// N-Triples, or Turtle for *.ttl files.
inline rdf::TripleStore load_store(const std::string& path) {
  const std::string content = rdf::read_file(path);
  rdf::TripleStore store;
  if (std::filesystem::path(path).extension() == ".ttl")
    store.insert_all(rdf::parse_turtle(content, vocab::standard_prefixes()));
  else
    store.insert_all(rdf::parse_ntriples(content));
  return store;
}

namespace detail {

struct Settings {
  std::string config;
  // convert
  std::string in_dir, mapping, out;
  bool strict = false;
  // shared
  std::string schema;
  std::string store;
  // materialize
  std::string in_file, violations, chains = "guarded";
  bool check = false;
  // link
  std::string source, target, classes = "agents,places", label_predicate, link_config, report;
  double threshold = 0.9;
  // query / serve
  std::string query_text, query_file, format = "json", addr = "127.0.0.1:8080";
  // verify
  std::string suite;
  bool schema_stats = false;
};

inline void add_config_option(CLI::App* sub, Settings& s) {
  sub->add_option("--config", s.config,
                  "Key-value file supplying defaults for this command's long options; flags override it");
}

inline void add_schema_option(CLI::App* sub, Settings& s, bool required_meaning) {
  sub->add_option("--schema", s.schema,
                  std::string(required_meaning ? "Ontology schema manifest (Turtle)"
                                               : "Ontology schema manifest (Turtle); when given, inputs are "
                                                 "materialized first") +
                      "; default $ARCO_SCHEMA, else the bundled schema")
      ->envname("ARCO_SCHEMA")
      ->check(CLI::ExistingFile);
}

inline std::string resolve_schema(const Settings& s) { return s.schema.empty() ? default_schema_path() : s.schema; }

inline void write_or_print(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-")
    out << content;
  else
    rdf::write_file(path, content);
}

inline reasoner::MaterializeOptions chain_options(const Settings& s) {
  reasoner::MaterializeOptions o;
  o.chains = s.chains == "unrestricted" ? reasoner::ChainSemantics::unrestricted : reasoner::ChainSemantics::range_guarded;
  return o;
}

inline int do_convert(const Settings& s, std::ostream& out, std::ostream& err) {
  const auto schema = ontology::load_schema_file(resolve_schema(s));
  const auto mapping = s.mapping.empty() ? rdfizer::default_mapping() : rdfizer::load_mapping_file(s.mapping);
  rdfizer::validate_mapping(mapping, schema);
  std::vector<std::string> warnings;
  const auto records = rdfizer::load_corpus_dir(s.in_dir, &warnings);
  rdf::TripleStore store;
  store.insert_all(rdfizer::convert_corpus(records, mapping, {s.strict}, &warnings));
  for (const auto& w : warnings) err << "warning: " << w << '\n';
  write_or_print(s.out, rdf::serialize_canonical(store), out);
  err << records.size() << " records, " << store.size() << " triples\n";
  return ok;
}

inline int do_materialize(const Settings& s, std::ostream& out, std::ostream& err) {
  const auto schema = ontology::load_schema_file(resolve_schema(s));
  auto store = load_store(s.in_file);
  const std::size_t before = store.size();
  reasoner::materialize_in_place(store, schema, chain_options(s));
  write_or_print(s.out, rdf::serialize_canonical(store), out);
  err << before << " asserted, " << store.size() - before << " inferred\n";
  if (!s.check && s.violations.empty()) return ok;
  const auto violations = reasoner::check_consistency(store, schema);
  if (!s.violations.empty()) rdf::write_file(s.violations, reasoner::to_json(violations).dump(2) + "\n");
  err << reasoner::render_text(violations) << violations.size() << " violations\n";
  return s.check && !violations.empty() ? failure : ok;
}

inline int do_link(const Settings& s, std::ostream& out, std::ostream& err, const CLI::App& sub) {
  linker::LinkerConfig config;
  if (!s.link_config.empty()) config = linker::load_config(rdf::read_file(s.link_config));
  if (sub.count("--threshold") || s.link_config.empty()) config.threshold = s.threshold;
  if (sub.count("--classes") || s.link_config.empty()) config.classes = linker::parse_class_list(s.classes);
  if (!s.label_predicate.empty()) config.label_predicate = s.label_predicate;
  linker::check(config);
  auto source = load_store(s.source);
  auto target = load_store(s.target);
  if (!s.schema.empty()) {
    const auto schema = ontology::load_schema_file(s.schema);
    reasoner::materialize_in_place(source, schema);
    reasoner::materialize_in_place(target, schema);
  }
  const auto report = linker::discover(source, target, config);
  rdf::TripleStore links;
  links.insert_all(linker::to_same_as(report.candidates));
  write_or_print(s.out, rdf::serialize_canonical(links), out);
  if (!s.report.empty()) rdf::write_file(s.report, report.to_json().dump(2) + "\n");
  err << report.pairs_scored << " pairs scored, " << report.links << " links, " << report.skipped_unlabelled
      << " unlabelled entities skipped\n";
  return ok;
}

inline rdf::TripleStore prepared_store(const Settings& s) {
  auto store = load_store(s.store);
  if (!s.schema.empty()) reasoner::materialize_in_place(store, ontology::load_schema_file(s.schema));
  return store;
}

inline int do_query(const Settings& s, std::ostream& out, std::ostream& err) {
  if (s.query_text.empty() == s.query_file.empty()) {
    err << "query: exactly one of --query and --query-file is required\n";
    return usage;
  }
  const std::string text = s.query_text.empty() ? rdf::read_file(s.query_file) : s.query_text;
  const auto query = query::parse_query(text);
  const auto store = prepared_store(s);
  const auto solutions = query::evaluate(query, store);
  std::string rendered;
  if (s.format == "tsv") {
    for (std::size_t i = 0; i < query.select.size(); ++i) rendered += (i ? "\t?" : "?") + query.select[i];
    rendered += '\n';
    for (const auto& sol : solutions) {
      for (std::size_t i = 0; i < query.select.size(); ++i)
        rendered += (i ? "\t" : "") + sol.at(query.select[i]).to_string();
      rendered += '\n';
    }
  } else {
    rendered = query::results_json(query, solutions).dump(2) + "\n";
  }
  write_or_print(s.out, rendered, out);
  return ok;
}

inline int do_serve(const Settings& s, std::ostream& out, std::ostream& err) {
  const auto colon = s.addr.rfind(':');
  int port = -1;
  if (colon != std::string::npos) {
    try {
      port = std::stoi(s.addr.substr(colon + 1));
    } catch (const std::exception&) {
      port = -1;
    }
  }
  if (colon == std::string::npos || port < 0 || port > 65535) {
    err << "serve: --addr must be HOST:PORT\n";
    return usage;
  }
  const auto store = prepared_store(s);
  query::QueryService service(store);
  const int bound = service.bind(s.addr.substr(0, colon), port);
  if (bound < 0) {
    err << "serve: cannot bind " << s.addr << '\n';
    return usage;
  }
  out << "listening on http://" << s.addr.substr(0, colon) << ':' << bound << " (" << store.size() << " triples)"
      << std::endl;
  service.listen();
  return ok;
}

inline int do_verify(const Settings& s, std::ostream& out, std::ostream&) {
  const auto schema = ontology::load_schema_file(resolve_schema(s));
  const auto report = verifier::run_suite(verifier::load_suite(s.suite), schema);
  out << report.render_text();
  if (!s.report.empty()) rdf::write_file(s.report, report.to_json().dump(2) + "\n");
  return report.all_passed() ? ok : failure;
}

inline int do_stats(const Settings& s, std::ostream& out, std::ostream&) {
  const auto schema = ontology::load_schema_file(resolve_schema(s));
  const auto store = load_store(s.store);
  nlohmann::ordered_json j = verifier::to_json(verifier::compute_stats(store, schema));
  if (s.schema_stats) j["schema"] = verifier::to_json(ontology::compute_schema_stats(schema));
  write_or_print(s.out, j.dump(2) + "\n", out);
  return ok;
}

// Removes `--config FILE` / `--config=FILE` from args, returning FILE.
inline std::optional<std::string> take_config(std::vector<std::string>& args) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size();) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i + 2));
    } else if (args[i].starts_with("--config=")) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
  return path;
}

}  // namespace detail

// Entry point without the program name. Output files are written in
// canonical form, so reruns are byte-identical.
inline int run(std::vector<std::string> args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  detail::Settings s;
  CLI::App app{"arco: build, materialize, link, query and verify ArCo-shaped knowledge graphs", "arco"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  auto* convert = app.add_subcommand("convert", "Convert a directory of XML catalogue records to N-Triples");
  convert->add_option("--in", s.in_dir, "Directory of *.xml records")->required()->check(CLI::ExistingDirectory);
  convert->add_option("--mapping", s.mapping, "Field mapping table (defaults built in)")->check(CLI::ExistingFile);
  convert->add_option("--out", s.out, "Output N-Triples file ('-' for stdout)")->default_str("-");
  convert->add_flag("--strict", s.strict, "Reject unmapped type codes and location types");
  detail::add_schema_option(convert, s, true);

  auto* materialize = app.add_subcommand("materialize", "Compute the inference closure of a graph");
  materialize->add_option("--in", s.in_file, "Input graph (.nt, or .ttl)")->required()->check(CLI::ExistingFile);
  materialize->add_option("--out", s.out, "Output N-Triples file ('-' for stdout)")->default_str("-");
  materialize->add_flag("--check", s.check, "Check disjointness after materializing; exit 1 on violations");
  materialize->add_option("--violations", s.violations, "Write the violation report as JSON");
  materialize->add_option("--chains", s.chains, "Property-chain semantics: guarded (range check) or unrestricted")
      ->check(CLI::IsMember({"guarded", "unrestricted"}));
  detail::add_schema_option(materialize, s, true);

  auto* link = app.add_subcommand("link", "Discover owl:sameAs links by label similarity");
  link->add_option("--source", s.source, "Source graph")->required()->check(CLI::ExistingFile);
  link->add_option("--target", s.target, "Target graph")->required()->check(CLI::ExistingFile);
  link->add_option("--threshold", s.threshold, "Minimum Jaccard similarity, inclusive (default 0.9)")
      ->check(CLI::Range(0.0, 1.0));
  link->add_option("--classes", s.classes, "Comma-separated classes: agents, places, or IRIs (default agents,places)");
  link->add_option("--label-predicate", s.label_predicate, "Label property IRI (default rdfs:label)");
  link->add_option("--link-config", s.link_config, "Linker configuration file (threshold, classes, label-predicate)")
      ->check(CLI::ExistingFile);
  link->add_option("--out", s.out, "Output N-Triples file ('-' for stdout)")->default_str("-");
  link->add_option("--report", s.report, "Write a JSON report of scored pairs and links");
  detail::add_schema_option(link, s, false);

  auto* query = app.add_subcommand("query", "Evaluate a SELECT query against a graph");
  query->add_option("--store", s.store, "Graph to query")->required()->check(CLI::ExistingFile);
  query->add_option("--query", s.query_text, "Query text");
  query->add_option("--query-file", s.query_file, "File holding the query")->check(CLI::ExistingFile);
  query->add_option("--format", s.format, "json (SPARQL results layout) or tsv")->check(CLI::IsMember({"json", "tsv"}));
  query->add_option("--out", s.out, "Output file ('-' for stdout)")->default_str("-");
  detail::add_schema_option(query, s, false);

  auto* serve = app.add_subcommand("serve", "Serve a graph over HTTP: /query?q=..., /health");
  serve->add_option("--store", s.store, "Graph to serve")->required()->check(CLI::ExistingFile);
  serve->add_option("--addr", s.addr, "Bind address HOST:PORT (default 127.0.0.1:8080; port 0 picks one)");
  detail::add_schema_option(serve, s, false);

  auto* verify = app.add_subcommand("verify", "Run an inference/error/CQ test suite");
  verify->add_option("--suite", s.suite, "Suite directory with inference/, error/ and cq/")
      ->required()
      ->check(CLI::ExistingDirectory);
  verify->add_option("--report", s.report, "Write the suite report as JSON");
  detail::add_schema_option(verify, s, true);

  auto* stats = app.add_subcommand("stats", "Dataset statistics of a materialized graph");
  stats->add_option("--store", s.store, "Materialized graph")->required()->check(CLI::ExistingFile);
  stats->add_option("--out", s.out, "Output JSON file ('-' for stdout)")->default_str("-");
  stats->add_flag("--schema-stats", s.schema_stats, "Include schema statistics in the report");
  detail::add_schema_option(stats, s, true);

  for (auto* sub : app.get_subcommands({})) {
    sub->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    detail::add_config_option(sub, s);
  }

  if (args.empty()) {
    err << app.help();
    return usage;
  }

  try {
    // Config values become leading options of the subcommand, so explicit
    // flags given later win.
    if (auto config_path = detail::take_config(args)) {
      const auto config = load_config(*config_path);
      auto pos = std::find_if(args.begin(), args.end(), [&](const std::string& a) {
        return !a.starts_with("-") && app.get_subcommand_ptr(a) != nullptr;
      });
      if (pos != args.end()) {
        CLI::App* sub = app.get_subcommand(*pos);
        std::vector<std::string> injected;
        for (const auto& [key, value] : config) {
          const CLI::Option* opt = sub->get_option_no_throw("--" + key);
          if (!opt || key == "config") continue;
          injected.push_back("--" + key + "=" + value);
        }
        args.insert(pos + 1, injected.begin(), injected.end());
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    CLI::App* failed = &app;
    for (auto* sub : app.get_subcommands())
      failed = sub;
    err << failed->help();
    return usage;
  }

  try {
    if (*convert) return detail::do_convert(s, out, err);
    if (*materialize) return detail::do_materialize(s, out, err);
    if (*link) return detail::do_link(s, out, err, *link);
    if (*query) return detail::do_query(s, out, err);
    if (*serve) return detail::do_serve(s, out, err);
    if (*verify) return detail::do_verify(s, out, err);
    if (*stats) return detail::do_stats(s, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return failure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return failure;
  }
  err << app.help();
  return usage;
}

}  // namespace arco::cli
