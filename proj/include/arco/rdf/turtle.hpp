#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arco/rdf/syntax.hpp"
#include "arco/vocab.hpp"

namespace arco::rdf {

using PrefixMap = std::map<std::string, std::string>;

namespace syntax {

inline bool is_pn_char_base(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || static_cast<unsigned char>(c) >= 0x80;
}

inline bool is_pn_char(char c) {
  return is_pn_char_base(c) || c == '_' || c == '-' || (c >= '0' && c <= '9');
}

// Characters that may follow a backslash inside a local name.
inline bool is_local_escape(char c) {
  return std::string_view("_~.-!$&'()*+,;=/?#@%").find(c) != std::string_view::npos;
}

// True when the cursor sits at the start of a prefixed name.
inline bool at_pname(const Cursor& in) {
  std::size_t i = 0;
  if (in.peek() == ':') return true;
  if (!is_pn_char_base(in.peek())) return false;
  while (is_pn_char(in.peek(i)) || in.peek(i) == '.') ++i;
  return in.peek(i) == ':' && in.peek(i - 1) != '.';
}

// Reads `prefix:local` and expands it against `prefixes`.
inline std::string read_pname(Cursor& in, const PrefixMap& prefixes) {
  std::string prefix;
  while (!in.at_end() && in.peek() != ':') {
    const char c = in.peek();
    if (!(is_pn_char(c) || c == '.')) in.fail("invalid character in prefix name");
    prefix.push_back(in.get());
  }
  in.expect(':', "':' in prefixed name");
  std::string local;
  while (!in.at_end()) {
    const char c = in.peek();
    if (is_pn_char(c) || c == ':' || (c >= '0' && c <= '9')) {
      local.push_back(in.get());
    } else if (c == '.' && !local.empty() && (is_pn_char(in.peek(1)) || in.peek(1) == ':' || in.peek(1) == '%' || in.peek(1) == '\\')) {
      local.push_back(in.get());
    } else if (c == '%') {
      local.push_back(in.get());
      for (int k = 0; k < 2; ++k) {
        const char h = in.peek();
        if (!std::isxdigit(static_cast<unsigned char>(h))) in.fail("invalid percent escape in local name");
        local.push_back(in.get());
      }
    } else if (c == '\\' && is_local_escape(in.peek(1))) {
      in.get();
      local.push_back(in.get());
    } else {
      break;
    }
  }
  auto it = prefixes.find(prefix);
  if (it == prefixes.end()) in.fail("unknown prefix '" + prefix + ":'");
  return it->second + local;
}

// Reads the name of a prefix declaration (`name:`) and returns `name`.
inline std::string read_prefix_decl_name(Cursor& in) {
  std::string prefix;
  while (!in.at_end() && in.peek() != ':') {
    const char c = in.peek();
    if (!(is_pn_char(c) || c == '.')) in.fail("invalid prefix name");
    prefix.push_back(in.get());
  }
  in.expect(':', "':' after prefix name");
  return prefix;
}

inline bool is_delimiter(char c) {
  return c == '\0' || c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '<' || c == '"' || c == '\'' ||
         c == '[' || c == '(' || c == '_' || c == '#' || c == '?' || c == '$';
}

// Numeric literal ([+-]digits[.digits][e[+-]digits]), typed per Turtle rules.
inline std::optional<Term> read_number(Cursor& in) {
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  std::size_t i = 0;
  if (in.peek() == '+' || in.peek() == '-') ++i;
  std::size_t int_digits = 0;
  while (digit(in.peek(i))) ++i, ++int_digits;
  std::size_t frac_digits = 0;
  if (in.peek(i) == '.' && digit(in.peek(i + 1))) {
    ++i;
    while (digit(in.peek(i))) ++i, ++frac_digits;
  }
  if (int_digits == 0 && frac_digits == 0) return std::nullopt;
  bool exponent = false;
  if ((in.peek(i) == 'e' || in.peek(i) == 'E')) {
    std::size_t j = i + 1;
    if (in.peek(j) == '+' || in.peek(j) == '-') ++j;
    if (digit(in.peek(j))) {
      exponent = true;
      i = j;
      while (digit(in.peek(i))) ++i;
    }
  }
  std::string lexical;
  for (std::size_t k = 0; k < i; ++k) lexical.push_back(in.get());
  const char* type = exponent ? "double" : frac_digits > 0 ? "decimal" : "integer";
  return Term::typed_literal(std::move(lexical), vocab::xsd(type));
}

}  // namespace syntax

namespace detail {

class TurtleParser {
 public:
  TurtleParser(std::string_view text, PrefixMap prefixes) : in_(text), prefixes_(std::move(prefixes)) {}

  std::vector<Triple> parse() {
    while (true) {
      in_.skip_space_and_comments();
      if (in_.at_end()) break;
      statement();
    }
    syntax::relabel_blank_nodes(out_);
    return std::move(out_);
  }

 private:
  void statement() {
    if (in_.consume("@prefix")) {
      prefix_decl();
      in_.skip_space_and_comments();
      in_.expect('.', "'.' after @prefix");
      return;
    }
    if (keyword("PREFIX")) {
      prefix_decl();
      return;
    }
    if (in_.starts_with("@base") || keyword_ahead("BASE")) in_.fail("base IRIs are not supported");
    Term subject = in_.peek() == '[' ? blank_property_list() : subject_term();
    in_.skip_space_and_comments();
    if (in_.peek() != '.' ) predicate_object_list(subject);
    in_.skip_space_and_comments();
    in_.expect('.', "'.' at end of statement");
  }

  bool keyword_ahead(std::string_view word) const {
    for (std::size_t i = 0; i < word.size(); ++i)
      if (std::toupper(static_cast<unsigned char>(in_.peek(i))) != word[i]) return false;
    const char after = in_.peek(word.size());
    return after == ' ' || after == '\t' || after == '\n' || after == '\r';
  }

  bool keyword(std::string_view word) {
    if (!keyword_ahead(word)) return false;
    for (std::size_t i = 0; i < word.size(); ++i) in_.get();
    return true;
  }

  void prefix_decl() {
    in_.skip_space_and_comments();
    std::string name = syntax::read_prefix_decl_name(in_);
    in_.skip_space_and_comments();
    prefixes_[name] = syntax::make_iri(in_, syntax::read_iri_ref(in_)).value();
  }

  Term fresh_blank() { return Term::blank("\x01" + std::to_string(fresh_++)); }

  Term iri_term() {
    if (in_.peek() == '<') return syntax::make_iri(in_, syntax::read_iri_ref(in_));
    if (syntax::at_pname(in_)) return syntax::make_iri(in_, syntax::read_pname(in_, prefixes_));
    in_.fail("expected IRI");
  }

  Term subject_term() {
    if (in_.consume("_:")) return Term::blank(syntax::read_blank_label(in_));
    if (in_.peek() == '(') return collection();
    return iri_term();
  }

  Term predicate_term() {
    if (in_.peek() == 'a' && syntax::is_delimiter(in_.peek(1))) {
      in_.get();
      return Term::iri(vocab::type());
    }
    return iri_term();
  }

  Term object_term() {
    const char c = in_.peek();
    if (c == '"' || c == '\'') return literal();
    if (in_.consume("_:")) return Term::blank(syntax::read_blank_label(in_));
    if (c == '[') return blank_property_list();
    if (c == '(') return collection();
    if (auto n = syntax::read_number(in_)) return *n;
    for (std::string_view word : {"true", "false"}) {
      if (in_.starts_with(word) && !syntax::is_pn_char(in_.peek(word.size())) && in_.peek(word.size()) != ':') {
        in_.consume(word);
        return Term::typed_literal(std::string(word), vocab::xsd("boolean"));
      }
    }
    return iri_term();
  }

  Term literal() {
    const char quote = in_.get();
    const bool long_form = in_.peek() == quote && in_.peek(1) == quote;
    if (long_form) {
      in_.get();
      in_.get();
    }
    std::string lexical = syntax::read_string_body(in_, quote, long_form);
    if (in_.consume('@')) return Term::lang_literal(std::move(lexical), syntax::read_lang(in_));
    if (in_.consume("^^")) return Term::typed_literal(std::move(lexical), iri_term().value());
    return Term::literal(std::move(lexical));
  }

  void predicate_object_list(const Term& subject) {
    while (true) {
      in_.skip_space_and_comments();
      Term predicate = predicate_term();
      while (true) {
        in_.skip_space_and_comments();
        Term object = object_term();
        out_.emplace_back(subject, predicate, std::move(object));
        in_.skip_space_and_comments();
        if (!in_.consume(',')) break;
      }
      in_.skip_space_and_comments();
      if (!in_.consume(';')) return;
      // A trailing ';' before '.' or ']' is allowed.
      while (true) {
        in_.skip_space_and_comments();
        if (!in_.consume(';')) break;
      }
      if (in_.peek() == '.' || in_.peek() == ']') return;
    }
  }

  Term blank_property_list() {
    in_.expect('[', "'['");
    Term node = fresh_blank();
    in_.skip_space_and_comments();
    if (!in_.consume(']')) {
      predicate_object_list(node);
      in_.skip_space_and_comments();
      in_.expect(']', "']'");
    }
    return node;
  }

  Term collection() {
    in_.expect('(', "'('");
    std::vector<Term> items;
    while (true) {
      in_.skip_space_and_comments();
      if (in_.consume(')')) break;
      if (in_.at_end()) in_.fail("unterminated collection");
      items.push_back(object_term());
    }
    const Term nil = Term::iri(vocab::rdf("nil"));
    if (items.empty()) return nil;
    const Term first = Term::iri(vocab::rdf("first"));
    const Term rest = Term::iri(vocab::rdf("rest"));
    std::vector<Term> cells;
    for (std::size_t i = 0; i < items.size(); ++i) cells.push_back(fresh_blank());
    for (std::size_t i = 0; i < items.size(); ++i) {
      out_.emplace_back(cells[i], first, items[i]);
      out_.emplace_back(cells[i], rest, i + 1 < items.size() ? cells[i + 1] : nil);
    }
    return cells.front();
  }

  syntax::Cursor in_;
  PrefixMap prefixes_;
  std::vector<Triple> out_;
  std::size_t fresh_ = 0;
};

}  // namespace detail

// Reads the supported Turtle subset: @prefix/PREFIX, the `a` keyword,
// predicate and object lists, plain/typed/language literals, numbers and
// booleans, blank node property lists and collections. `prefixes` seeds the
// prefix table.
inline std::vector<Triple> parse_turtle(std::string_view text, PrefixMap prefixes = {}) {
  return detail::TurtleParser(text, std::move(prefixes)).parse();
}

}  // namespace arco::rdf
