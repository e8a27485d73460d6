#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "arco/error.hpp"
#include "arco/rdf/store.hpp"
#include "arco/rdf/syntax.hpp"

namespace arco::rdf {

namespace detail {

inline Term read_nt_subject(syntax::Cursor& in) {
  if (in.peek() == '<') return syntax::make_iri(in, syntax::read_iri_ref(in));
  if (in.consume("_:")) return Term::blank(syntax::read_blank_label(in));
  in.fail("expected IRI or blank node as subject");
}

inline Term read_nt_object(syntax::Cursor& in) {
  if (in.peek() == '<') return syntax::make_iri(in, syntax::read_iri_ref(in));
  if (in.consume("_:")) return Term::blank(syntax::read_blank_label(in));
  if (!in.consume('"')) in.fail("expected IRI, blank node or literal as object");
  std::string lexical = syntax::read_string_body(in, '"', false);
  if (in.consume('@')) return Term::lang_literal(std::move(lexical), syntax::read_lang(in));
  if (in.consume("^^")) {
    std::string datatype = syntax::make_iri(in, syntax::read_iri_ref(in)).value();
    return Term::typed_literal(std::move(lexical), std::move(datatype));
  }
  return Term::literal(std::move(lexical));
}

}  // namespace detail

// Parses an N-Triples document. Triples come back in document order with
// duplicates kept; blank nodes are relabelled as described by
// syntax::relabel_blank_nodes.
inline std::vector<Triple> parse_ntriples(std::string_view text) {
  std::vector<Triple> out;
  syntax::Cursor in(text);
  while (true) {
    in.skip_space_and_comments();
    if (in.at_end()) break;
    Term subject = detail::read_nt_subject(in);
    in.skip_blanks();
    if (in.peek() != '<') in.fail("expected IRI as predicate");
    Term predicate = syntax::make_iri(in, syntax::read_iri_ref(in));
    in.skip_blanks();
    Term object = detail::read_nt_object(in);
    in.skip_blanks();
    in.expect('.', "'.' at end of triple");
    in.skip_blanks();
    if (in.peek() == '#') {
      while (!in.at_end() && in.peek() != '\n') in.get();
    }
    if (!in.at_end() && in.peek() != '\n' && in.peek() != '\r') in.fail("unexpected text after triple");
    out.emplace_back(std::move(subject), std::move(predicate), std::move(object));
  }
  syntax::relabel_blank_nodes(out);
  return out;
}

// One statement per line, in the given order.
inline std::string serialize_ntriples(const std::vector<Triple>& triples) {
  std::string out;
  for (const auto& t : triples) {
    out += t.to_string();
    out.push_back('\n');
  }
  return out;
}

// N-Triples sorted by the rendered (subject, predicate, object) strings.
inline std::string serialize_canonical(const TripleStore& store) {
  std::vector<IdTriple> ids(store.id_triples().begin(), store.id_triples().end());
  store.sort_canonical(ids);
  std::string out;
  for (const auto& t : ids) {
    out += store.rendered(t.s);
    out.push_back(' ');
    out += store.rendered(t.p);
    out.push_back(' ');
    out += store.rendered(t.o);
    out += " .\n";
  }
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace arco::rdf
