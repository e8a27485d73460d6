#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "arco/error.hpp"
#include "arco/rdf/store.hpp"
#include "arco/rdf/syntax.hpp"
#include "arco/rdf/turtle.hpp"
#include "arco/vocab.hpp"

namespace arco::query {

struct Variable {
  std::string name;
  friend bool operator==(const Variable&, const Variable&) = default;
};

using Slot = std::variant<rdf::Term, Variable>;

struct PatternTriple {
  Slot subject, predicate, object;
  friend bool operator==(const PatternTriple&, const PatternTriple&) = default;
};

struct BGPQuery {
  std::vector<std::string> select;  // projection, in output order
  std::vector<PatternTriple> patterns;
  bool distinct = false;
  std::optional<std::size_t> limit;

  // Variables in order of first appearance in the patterns.
  std::vector<std::string> pattern_variables() const {
    std::vector<std::string> out;
    for (const auto& p : patterns)
      for (const Slot* slot : {&p.subject, &p.predicate, &p.object})
        if (auto v = std::get_if<Variable>(slot); v && std::find(out.begin(), out.end(), v->name) == out.end())
          out.push_back(v->name);
    return out;
  }
};

struct Solution {
  std::map<std::string, rdf::Term> bindings;
  const rdf::Term& at(const std::string& var) const { return bindings.at(var); }
  friend bool operator==(const Solution&, const Solution&) = default;
};

namespace detail {

class QueryParser {
 public:
  explicit QueryParser(std::string_view text) : in_(text), prefixes_(vocab::standard_prefixes()) {}

  BGPQuery parse() {
    BGPQuery q;
    skip();
    while (keyword("PREFIX")) {
      skip();
      std::string name = rdf::syntax::read_prefix_decl_name(in_);
      skip();
      std::string iri = rdf::syntax::read_iri_ref(in_);
      if (!rdf::has_scheme(iri)) in_.fail("relative IRI <" + iri + "> in PREFIX");
      prefixes_[name] = iri;
      skip();
    }
    if (!keyword("SELECT")) in_.fail("expected SELECT");
    skip();
    if (keyword("DISTINCT")) {
      q.distinct = true;
      skip();
    }
    bool star = false;
    if (in_.consume('*')) {
      star = true;
      skip();
    } else {
      while (in_.peek() == '?' || in_.peek() == '$') {
        std::string name = variable();
        if (std::find(q.select.begin(), q.select.end(), name) != q.select.end())
          in_.fail("variable ?" + name + " selected twice");
        q.select.push_back(std::move(name));
        skip();
      }
      if (q.select.empty()) in_.fail("expected variable or '*' after SELECT");
    }
    if (keyword("WHERE")) skip();
    in_.expect('{', "'{'");
    group(q);
    skip();
    if (keyword("LIMIT")) {
      skip();
      std::string digits;
      while (in_.peek() >= '0' && in_.peek() <= '9') digits.push_back(in_.get());
      if (digits.empty() || digits.size() > 18) in_.fail("expected LIMIT count");
      const auto n = std::stoull(digits);
      if (n == 0) in_.fail("LIMIT must be positive");
      q.limit = static_cast<std::size_t>(n);
      skip();
    }
    if (!in_.at_end()) in_.fail("unexpected text after query");
    if (q.patterns.empty()) throw ParseError("query has no triple patterns", in_.line(), in_.column());
    const auto vars = q.pattern_variables();
    if (star) {
      q.select = vars;
    } else {
      for (const auto& v : q.select)
        if (std::find(vars.begin(), vars.end(), v) == vars.end())
          throw ParseError("selected variable ?" + v + " does not occur in the patterns", 0);
    }
    return q;
  }

 private:
  void skip() { in_.skip_space_and_comments(); }

  bool keyword(std::string_view word) {
    for (std::size_t i = 0; i < word.size(); ++i)
      if (std::toupper(static_cast<unsigned char>(in_.peek(i))) != word[i]) return false;
    const char next = in_.peek(word.size());
    if (std::isalnum(static_cast<unsigned char>(next)) || next == '_' || next == ':') return false;
    for (std::size_t i = 0; i < word.size(); ++i) in_.get();
    return true;
  }

  std::string variable() {
    in_.get();
    std::string name;
    while (std::isalnum(static_cast<unsigned char>(in_.peek())) || in_.peek() == '_' ||
           static_cast<unsigned char>(in_.peek()) >= 0x80)
      name.push_back(in_.get());
    if (name.empty()) in_.fail("empty variable name");
    return name;
  }

  void group(BGPQuery& q) {
    while (true) {
      skip();
      if (in_.consume('}')) return;
      if (in_.at_end()) in_.fail("unterminated group, expected '}'");
      Slot subject = slot(false);
      while (true) {
        skip();
        Slot predicate = predicate_slot();
        while (true) {
          skip();
          q.patterns.push_back({subject, predicate, slot(true)});
          skip();
          if (!in_.consume(',')) break;
        }
        if (!in_.consume(';')) break;
        skip();
        while (in_.consume(';')) skip();
        if (in_.peek() == '.' || in_.peek() == '}') break;
      }
      skip();
      if (in_.consume('.')) continue;
      if (in_.peek() != '}') in_.fail("expected '.' or '}'");
    }
  }

  Slot predicate_slot() {
    if (in_.peek() == 'a' && rdf::syntax::is_delimiter(in_.peek(1))) {
      in_.get();
      return rdf::Term::iri(vocab::type());
    }
    Slot s = slot(false);
    if (auto t = std::get_if<rdf::Term>(&s); t && !t->is_iri()) in_.fail("predicate must be an IRI or variable");
    return s;
  }

  Slot slot(bool object_position) {
    const char c = in_.peek();
    if (c == '?' || c == '$') return Variable{variable()};
    if (c == '<') {
      std::string iri = rdf::syntax::read_iri_ref(in_);
      if (!rdf::has_scheme(iri)) in_.fail("relative IRI <" + iri + ">");
      return rdf::Term::iri(std::move(iri));
    }
    if (c == '_' && in_.peek(1) == ':') in_.fail("blank nodes are not supported in queries");
    if (object_position) {
      if (c == '"' || c == '\'') return literal();
      if (auto n = rdf::syntax::read_number(in_)) return *n;
      for (std::string_view word : {"true", "false"}) {
        if (in_.starts_with(word) && !rdf::syntax::is_pn_char(in_.peek(word.size())) && in_.peek(word.size()) != ':') {
          in_.consume(word);
          return rdf::Term::typed_literal(std::string(word), vocab::xsd("boolean"));
        }
      }
    }
    if (rdf::syntax::at_pname(in_)) return rdf::Term::iri(rdf::syntax::read_pname(in_, prefixes_));
    if (in_.at_end()) in_.fail("unexpected end of query");
    in_.fail(std::string("unexpected character '") + c + "'");
  }

  rdf::Term literal() {
    const char quote = in_.get();
    const bool long_form = in_.peek() == quote && in_.peek(1) == quote;
    if (long_form) {
      in_.get();
      in_.get();
    }
    std::string lexical = rdf::syntax::read_string_body(in_, quote, long_form);
    if (in_.consume('@')) return rdf::Term::lang_literal(std::move(lexical), rdf::syntax::read_lang(in_));
    if (in_.consume("^^")) {
      Slot dt = slot(false);
      auto t = std::get_if<rdf::Term>(&dt);
      if (!t || !t->is_iri()) in_.fail("datatype must be an IRI");
      return rdf::Term::typed_literal(std::move(lexical), t->value());
    }
    return rdf::Term::literal(std::move(lexical));
  }

  rdf::syntax::Cursor in_;
  rdf::PrefixMap prefixes_;
};

}  // namespace detail

// Standard prefixes (`:`, rdf, rdfs, owl, xsd, core, a-cat, ...) are
// predeclared; PREFIX lines may add or override them.
inline BGPQuery parse_query(std::string_view text) { return detail::QueryParser(text).parse(); }

namespace detail {

struct CompiledSlot {
  std::optional<rdf::TermId> constant;
  int var = -1;
};

struct CompiledPattern {
  CompiledSlot s, p, o;
};

class Evaluator {
 public:
  Evaluator(const BGPQuery& query, const rdf::TripleStore& store) : query_(query), store_(store) {}

  std::vector<std::vector<rdf::TermId>> run() {
    vars_ = query_.pattern_variables();
    std::vector<CompiledPattern> compiled;
    for (const auto& p : query_.patterns) {
      CompiledPattern c{compile(p.subject), compile(p.predicate), compile(p.object)};
      if (missing_) return {};
      compiled.push_back(c);
    }
    order(compiled);
    binding_.assign(vars_.size(), std::nullopt);
    for (const auto& name : query_.select) projection_.push_back(index_of(name));
    solve(0);
    return std::move(rows_);
  }

 private:
  CompiledSlot compile(const Slot& slot) {
    if (auto v = std::get_if<Variable>(&slot)) return {std::nullopt, index_of(v->name)};
    auto id = store_.find(std::get<rdf::Term>(slot));
    if (!id) missing_ = true;
    return {id, -1};
  }

  int index_of(const std::string& name) const {
    return static_cast<int>(std::find(vars_.begin(), vars_.end(), name) - vars_.begin());
  }

  // Greedy: repeatedly take the pattern with the smallest index estimate,
  // preferring patterns connected to variables already bound.
  void order(std::vector<CompiledPattern>& patterns) {
    std::vector<CompiledPattern> out;
    std::vector<char> bound(vars_.size(), 0);
    while (!patterns.empty()) {
      std::size_t best = 0;
      std::pair<int, std::size_t> best_key{2, 0};
      for (std::size_t i = 0; i < patterns.size(); ++i) {
        const auto& p = patterns[i];
        bool connected = false, has_var = false;
        for (const CompiledSlot* s : {&p.s, &p.p, &p.o})
          if (s->var >= 0) {
            has_var = true;
            connected = connected || bound[s->var];
          }
        const int rank = (!has_var || connected || out.empty()) ? 0 : 1;
        std::pair<int, std::size_t> key{rank, store_.estimate(p.s.constant, p.p.constant, p.o.constant)};
        if (i == 0 || key < best_key) {
          best = i;
          best_key = key;
        }
      }
      for (const CompiledSlot* s : {&patterns[best].s, &patterns[best].p, &patterns[best].o})
        if (s->var >= 0) bound[s->var] = 1;
      out.push_back(patterns[best]);
      patterns.erase(patterns.begin() + static_cast<std::ptrdiff_t>(best));
    }
    patterns = std::move(out);
    ordered_ = patterns;
  }

  std::optional<rdf::TermId> value(const CompiledSlot& s) const {
    if (s.var < 0) return s.constant;
    return binding_[s.var];
  }

  void solve(std::size_t step) {
    if (step == ordered_.size()) {
      std::vector<rdf::TermId> row;
      for (int v : projection_) row.push_back(*binding_[v]);
      rows_.push_back(std::move(row));
      return;
    }
    const auto& p = ordered_[step];
    const auto matches = store_.match_ids(value(p.s), value(p.p), value(p.o));
    for (const auto& t : matches) {
      std::vector<int> assigned;
      bool ok = true;
      for (auto [slot, id] : {std::pair{&p.s, t.s}, std::pair{&p.p, t.p}, std::pair{&p.o, t.o}}) {
        if (slot->var < 0) continue;
        auto& b = binding_[slot->var];
        if (!b) {
          b = id;
          assigned.push_back(slot->var);
        } else if (*b != id) {
          ok = false;
          break;
        }
      }
      if (ok) solve(step + 1);
      for (int v : assigned) binding_[v].reset();
    }
  }

  const BGPQuery& query_;
  const rdf::TripleStore& store_;
  std::vector<std::string> vars_;
  std::vector<CompiledPattern> ordered_;
  std::vector<std::optional<rdf::TermId>> binding_;
  std::vector<int> projection_;
  std::vector<std::vector<rdf::TermId>> rows_;
  bool missing_ = false;
};

}  // namespace detail

// Solutions in canonical order: rows compared by the N-Triples rendering of
// their bindings, in select-variable order.
inline std::vector<Solution> evaluate(const BGPQuery& query, const rdf::TripleStore& store) {
  auto rows = detail::Evaluator(query, store).run();
  auto less = [&](const std::vector<rdf::TermId>& a, const std::vector<rdf::TermId>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == b[i]) continue;
      return store.rendered(a[i]) < store.rendered(b[i]);
    }
    return false;
  };
  std::sort(rows.begin(), rows.end(), less);
  if (query.distinct) rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  if (query.limit && rows.size() > *query.limit) rows.resize(*query.limit);
  std::vector<Solution> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    Solution s;
    for (std::size_t i = 0; i < row.size(); ++i) s.bindings.emplace(query.select[i], store.term(row[i]));
    out.push_back(std::move(s));
  }
  return out;
}

inline std::vector<Solution> evaluate(std::string_view text, const rdf::TripleStore& store) {
  return evaluate(parse_query(text), store);
}

}  // namespace arco::query
