#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "arco/vocab.hpp"

namespace arco::rdf {

enum class TermKind : std::uint8_t { iri, literal, blank };

// True when `iri` starts with a scheme, i.e. ALPHA *( ALPHA / DIGIT / "+" /
// "-" / "." ) ":".
inline bool has_scheme(std::string_view iri) {
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
  if (iri.empty() || !alpha(iri[0])) return false;
  for (std::size_t i = 1; i < iri.size(); ++i) {
    const char c = iri[i];
    if (c == ':') return true;
    if (!alpha(c) && !(c >= '0' && c <= '9') && c != '+' && c != '-' && c != '.') return false;
  }
  return false;
}

// An RDF term. Plain literals carry an empty datatype (xsd:string is
// normalised to empty); language-tagged literals carry no datatype.
class Term {
 public:
  Term() = default;

  static Term iri(std::string value) {
    if (!has_scheme(value)) throw std::invalid_argument("not an absolute IRI: " + value);
    return Term(TermKind::iri, std::move(value), {}, {});
  }

  static Term literal(std::string lexical) { return Term(TermKind::literal, std::move(lexical), {}, {}); }

  static Term lang_literal(std::string lexical, std::string language) {
    if (language.empty()) return literal(std::move(lexical));
    return Term(TermKind::literal, std::move(lexical), std::move(language), {});
  }

  static Term typed_literal(std::string lexical, std::string datatype) {
    if (datatype == vocab::xsd_string()) datatype.clear();
    if (!datatype.empty() && !has_scheme(datatype))
      throw std::invalid_argument("datatype is not an absolute IRI: " + datatype);
    return Term(TermKind::literal, std::move(lexical), {}, std::move(datatype));
  }

  static Term blank(std::string label) {
    if (label.empty()) throw std::invalid_argument("empty blank node label");
    return Term(TermKind::blank, std::move(label), {}, {});
  }

  TermKind kind() const noexcept { return kind_; }
  bool is_iri() const noexcept { return kind_ == TermKind::iri; }
  bool is_literal() const noexcept { return kind_ == TermKind::literal; }
  bool is_blank() const noexcept { return kind_ == TermKind::blank; }

  // IRI text, literal lexical form, or blank node label (without "_:").
  const std::string& value() const noexcept { return value_; }
  const std::string& language() const noexcept { return language_; }
  const std::string& datatype() const noexcept { return datatype_; }

  // N-Triples rendering.
  std::string to_string() const;

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;

 private:
  Term(TermKind kind, std::string value, std::string language, std::string datatype)
      : kind_(kind), value_(std::move(value)), language_(std::move(language)), datatype_(std::move(datatype)) {}

  TermKind kind_ = TermKind::blank;
  std::string value_;
  std::string language_;
  std::string datatype_;
};

inline Term iri(std::string value) { return Term::iri(std::move(value)); }

namespace detail {

inline void escape_iri(std::string& out, std::string_view iri) {
  static const char* hex = "0123456789ABCDEF";
  for (unsigned char c : iri) {
    const bool forbidden = c <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' || c == '}' ||
                           c == '|' || c == '^' || c == '`' || c == '\\';
    if (forbidden) {
      out += "\\u00";
      out.push_back(hex[c >> 4]);
      out.push_back(hex[c & 0xF]);
    } else {
      out.push_back(static_cast<char>(c));
    }
  }
}

inline void escape_literal(std::string& out, std::string_view text) {
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out.push_back(c);
    }
  }
}

}  // namespace detail

inline std::string Term::to_string() const {
  std::string out;
  switch (kind_) {
    case TermKind::iri:
      out.push_back('<');
      detail::escape_iri(out, value_);
      out.push_back('>');
      break;
    case TermKind::blank:
      out = "_:" + value_;
      break;
    case TermKind::literal:
      out.push_back('"');
      detail::escape_literal(out, value_);
      out.push_back('"');
      if (!language_.empty()) {
        out += "@" + language_;
      } else if (!datatype_.empty()) {
        out += "^^<";
        detail::escape_iri(out, datatype_);
        out.push_back('>');
      }
      break;
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Term& t) { return os << t.to_string(); }

// A triple whose subject is an IRI or blank node and whose predicate is an IRI.
class Triple {
 public:
  Triple(Term subject, Term predicate, Term object)
      : subject_(std::move(subject)), predicate_(std::move(predicate)), object_(std::move(object)) {
    if (subject_.is_literal()) throw std::invalid_argument("literal in subject position");
    if (!predicate_.is_iri()) throw std::invalid_argument("predicate must be an IRI");
  }

  const Term& subject() const noexcept { return subject_; }
  const Term& predicate() const noexcept { return predicate_; }
  const Term& object() const noexcept { return object_; }

  // One N-Triples statement without the trailing newline.
  std::string to_string() const {
    return subject_.to_string() + " " + predicate_.to_string() + " " + object_.to_string() + " .";
  }

  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;

 private:
  Term subject_;
  Term predicate_;
  Term object_;
};

inline std::ostream& operator<<(std::ostream& os, const Triple& t) { return os << t.to_string(); }

inline std::size_t hash_combine(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace arco::rdf

template <>
struct std::hash<arco::rdf::Term> {
  std::size_t operator()(const arco::rdf::Term& t) const noexcept {
    std::size_t h = std::hash<std::string>{}(t.value());
    h = arco::rdf::hash_combine(h, static_cast<std::size_t>(t.kind()));
    if (!t.language().empty()) h = arco::rdf::hash_combine(h, std::hash<std::string>{}(t.language()));
    if (!t.datatype().empty()) h = arco::rdf::hash_combine(h, std::hash<std::string>{}(t.datatype()));
    return h;
  }
};

template <>
struct std::hash<arco::rdf::Triple> {
  std::size_t operator()(const arco::rdf::Triple& t) const noexcept {
    std::hash<arco::rdf::Term> h;
    return arco::rdf::hash_combine(arco::rdf::hash_combine(h(t.subject()), h(t.predicate())), h(t.object()));
  }
};
