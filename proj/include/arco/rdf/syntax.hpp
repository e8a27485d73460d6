#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "arco/error.hpp"
#include "arco/rdf/term.hpp"
#include "arco/rdf/utf8.hpp"

// Lexical machinery shared by the N-Triples, Turtle and query parsers.
namespace arco::rdf::syntax {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  bool at_end() const noexcept { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const noexcept {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  std::size_t pos() const noexcept { return pos_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return pos_ - line_start_ + 1; }
  std::string_view text() const noexcept { return text_; }

  char get() {
    const char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      line_start_ = pos_;
    }
    return c;
  }

  bool starts_with(std::string_view s) const noexcept { return text_.substr(pos_).starts_with(s); }

  bool consume(char c) {
    if (peek() != c || at_end()) return false;
    get();
    return true;
  }

  bool consume(std::string_view s) {
    if (!starts_with(s)) return false;
    for (std::size_t i = 0; i < s.size(); ++i) get();
    return true;
  }

  // Horizontal whitespace only.
  void skip_blanks() {
    while (!at_end() && (peek() == ' ' || peek() == '\t')) get();
  }

  // Whitespace including newlines, and `#` comments.
  void skip_space_and_comments() {
    while (!at_end()) {
      const char c = peek();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        get();
      } else if (c == '#') {
        while (!at_end() && peek() != '\n') get();
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, line_, column()); }

  void expect(char c, std::string_view what) {
    if (!consume(c)) fail("expected " + std::string(what));
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t line_start_ = 0;
};

// \uXXXX or \UXXXXXXXX after the backslash has been consumed.
inline void read_uchar(Cursor& in, std::string& out) {
  const char kind = in.at_end() ? '\0' : in.get();
  const std::size_t digits = kind == 'u' ? 4 : kind == 'U' ? 8 : 0;
  if (digits == 0) in.fail("invalid escape sequence");
  std::string hex;
  for (std::size_t i = 0; i < digits; ++i) {
    if (in.at_end()) in.fail("truncated unicode escape");
    hex.push_back(in.get());
  }
  auto cp = utf8::parse_hex(hex);
  if (!cp) in.fail("invalid unicode escape \\" + std::string(1, kind) + hex);
  utf8::append(out, *cp);
}

// '<' IRI '>' with the opening bracket still pending. Returns the decoded
// text, absolute or not.
inline std::string read_iri_ref(Cursor& in) {
  in.expect('<', "'<'");
  std::string out;
  while (true) {
    if (in.at_end()) in.fail("unterminated IRI");
    const char c = in.get();
    if (c == '>') break;
    if (c == '\\') {
      read_uchar(in, out);
      continue;
    }
    const auto u = static_cast<unsigned char>(c);
    if (u <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' || c == '|' || c == '^' || c == '`')
      in.fail("invalid character in IRI");
    out.push_back(c);
  }
  return out;
}

inline Term make_iri(Cursor& in, std::string value) {
  if (!has_scheme(value)) in.fail("relative IRI <" + value + ">");
  return Term::iri(std::move(value));
}

// String body with the opening quote already consumed. `quote` is '"' or `'`;
// `long_form` selects the triple-quoted variant.
inline std::string read_string_body(Cursor& in, char quote, bool long_form) {
  std::string out;
  while (true) {
    if (in.at_end()) in.fail("unterminated string literal");
    if (long_form) {
      if (in.peek() == quote && in.peek(1) == quote && in.peek(2) == quote) {
        in.get();
        in.get();
        in.get();
        return out;
      }
    } else if (in.peek() == quote) {
      in.get();
      return out;
    }
    if (!long_form && (in.peek() == '\n' || in.peek() == '\r')) in.fail("newline in string literal");
    const char c = in.get();
    if (c != '\\') {
      out.push_back(c);
      continue;
    }
    if (in.at_end()) in.fail("unterminated escape");
    const char e = in.peek();
    switch (e) {
      case 't': in.get(); out.push_back('\t'); break;
      case 'b': in.get(); out.push_back('\b'); break;
      case 'n': in.get(); out.push_back('\n'); break;
      case 'r': in.get(); out.push_back('\r'); break;
      case 'f': in.get(); out.push_back('\f'); break;
      case '"': in.get(); out.push_back('"'); break;
      case '\'': in.get(); out.push_back('\''); break;
      case '\\': in.get(); out.push_back('\\'); break;
      case 'u':
      case 'U': read_uchar(in, out); break;
      default: in.fail(std::string("invalid escape \\") + e);
    }
  }
}

inline bool is_lang_char(char c, bool first) {
  const bool alpha = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  return first ? alpha : (alpha || (c >= '0' && c <= '9') || c == '-');
}

// Language tag after '@'.
inline std::string read_lang(Cursor& in) {
  std::string tag;
  while (!in.at_end() && is_lang_char(in.peek(), tag.empty())) tag.push_back(in.get());
  if (tag.empty() || tag.back() == '-') in.fail("invalid language tag");
  return tag;
}

inline bool is_label_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '-' ||
         c == '.' || u >= 0x80;
}

// Blank node label after "_:"; a trailing '.' belongs to the statement.
inline std::string read_blank_label(Cursor& in) {
  std::string label;
  while (!in.at_end() && is_label_char(in.peek())) {
    if (in.peek() == '.' && !(is_label_char(in.peek(1)) && in.peek(1) != '.')) break;
    label.push_back(in.get());
  }
  if (label.empty() || label[0] == '.' || label[0] == '-') in.fail("invalid blank node label");
  return label;
}

// Assigns deterministic blank labels: labels already of the form b<digits>
// are kept; every other label is renamed, in first-occurrence order, to the
// next b<n> not already taken. Re-parsing canonical output is therefore
// label-preserving.
inline void relabel_blank_nodes(std::vector<Triple>& triples) {
  auto canonical = [](const std::string& label) {
    if (label.size() < 2 || label[0] != 'b') return false;
    if (label[1] == '0' && label.size() > 2) return false;
    for (std::size_t i = 1; i < label.size(); ++i)
      if (label[i] < '0' || label[i] > '9') return false;
    return true;
  };
  std::unordered_set<std::string> taken;
  bool any_other = false;
  for (const auto& t : triples) {
    for (const Term* term : {&t.subject(), &t.object()}) {
      if (!term->is_blank()) continue;
      if (canonical(term->value())) taken.insert(term->value());
      else any_other = true;
    }
  }
  if (!any_other) return;
  std::unordered_map<std::string, std::string> renamed;
  std::size_t next = 0;
  auto rename = [&](const Term& term) -> Term {
    if (!term.is_blank() || canonical(term.value())) return term;
    auto it = renamed.find(term.value());
    if (it == renamed.end()) {
      std::string label;
      do {
        label = "b" + std::to_string(next++);
      } while (taken.contains(label));
      taken.insert(label);
      it = renamed.emplace(term.value(), std::move(label)).first;
    }
    return Term::blank(it->second);
  };
  for (auto& t : triples) {
    if (!t.subject().is_blank() && !t.object().is_blank()) continue;
    Term subject = rename(t.subject());
    Term object = rename(t.object());
    t = Triple(std::move(subject), t.predicate(), std::move(object));
  }
}

}  // namespace arco::rdf::syntax
