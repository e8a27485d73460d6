#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "arco/rdf/term.hpp"

namespace arco::rdf {

using TermId = std::uint32_t;

struct IdTriple {
  TermId s;
  TermId p;
  TermId o;
  friend bool operator==(const IdTriple&, const IdTriple&) = default;
};

struct IdTripleHash {
  std::size_t operator()(const IdTriple& t) const noexcept {
    return hash_combine(hash_combine(t.s, t.p), t.o);
  }
};

// Each slot is either a concrete term or a wildcard.
struct TriplePattern {
  std::optional<Term> subject;
  std::optional<Term> predicate;
  std::optional<Term> object;
};

// In-memory graph with set semantics. Terms are interned into a dictionary;
// triples are indexed by subject, predicate, object and (predicate, object).
// Const member functions never mutate, so a loaded store can be read from
// several threads at once.
class TripleStore {
 public:
  TripleStore() = default;

  template <class Range>
  explicit TripleStore(const Range& triples) {
    insert_all(triples);
  }

  std::size_t size() const noexcept { return triples_.size(); }
  bool empty() const noexcept { return triples_.empty(); }

  bool insert(const Triple& t) { return insert(IdTriple{intern(t.subject()), intern(t.predicate()), intern(t.object())}); }

  template <class Range>
  std::size_t insert_all(const Range& triples) {
    std::size_t added = 0;
    for (const auto& t : triples) added += insert(t) ? 1 : 0;
    return added;
  }

  bool contains(const Triple& t) const {
    auto s = find(t.subject());
    auto p = find(t.predicate());
    auto o = find(t.object());
    return s && p && o && contains(IdTriple{*s, *p, *o});
  }

  // Matching triples in canonical order.
  std::vector<Triple> match(const TriplePattern& pattern) const {
    std::optional<TermId> s, p, o;
    if (pattern.subject && !(s = find(*pattern.subject))) return {};
    if (pattern.predicate && !(p = find(*pattern.predicate))) return {};
    if (pattern.object && !(o = find(*pattern.object))) return {};
    auto ids = match_ids(s, p, o);
    sort_canonical(ids);
    return to_triples(ids);
  }

  // Every triple in canonical order.
  std::vector<Triple> triples() const {
    std::vector<IdTriple> ids(triples_.begin(), triples_.end());
    sort_canonical(ids);
    return to_triples(ids);
  }

  // --- dictionary-level access --------------------------------------------

  std::optional<TermId> find(const Term& t) const {
    auto it = ids_.find(t);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }

  TermId intern(const Term& t) {
    auto [it, inserted] = ids_.try_emplace(t, static_cast<TermId>(terms_.size()));
    if (inserted) {
      terms_.push_back(t);
      rendered_.push_back(t.to_string());
    }
    return it->second;
  }

  const Term& term(TermId id) const { return terms_.at(id); }
  const std::string& rendered(TermId id) const { return rendered_.at(id); }
  std::size_t dictionary_size() const noexcept { return terms_.size(); }

  bool insert(IdTriple t) {
    if (!set_.insert(t).second) return false;
    const auto pos = static_cast<std::uint32_t>(triples_.size());
    triples_.push_back(t);
    by_s_[t.s].push_back(pos);
    by_p_[t.p].push_back(pos);
    by_o_[t.o].push_back(pos);
    by_po_[po_key(t.p, t.o)].push_back(pos);
    return true;
  }

  bool contains(IdTriple t) const { return set_.contains(t); }

  // Triples in insertion order.
  std::span<const IdTriple> id_triples() const noexcept { return triples_; }

  // Unordered matches; empty optionals are wildcards.
  std::vector<IdTriple> match_ids(std::optional<TermId> s, std::optional<TermId> p,
                                  std::optional<TermId> o) const {
    std::vector<IdTriple> out;
    if (s && p && o) {
      if (contains(IdTriple{*s, *p, *o})) out.push_back({*s, *p, *o});
      return out;
    }
    const std::vector<std::uint32_t>* candidates = nullptr;
    auto consider = [&](const std::vector<std::uint32_t>* list) {
      if (!candidates || list->size() < candidates->size()) candidates = list;
    };
    if (s) consider(lookup(by_s_, *s));
    if (p && o) consider(lookup_po(*p, *o));
    else if (o) consider(lookup(by_o_, *o));
    else if (p) consider(lookup(by_p_, *p));
    if (!candidates) {
      out.assign(triples_.begin(), triples_.end());
      return out;
    }
    for (auto pos : *candidates) {
      const IdTriple& t = triples_[pos];
      if ((!s || t.s == *s) && (!p || t.p == *p) && (!o || t.o == *o)) out.push_back(t);
    }
    return out;
  }

  // Upper bound on the number of matches, from the index sizes alone.
  std::size_t estimate(std::optional<TermId> s, std::optional<TermId> p, std::optional<TermId> o) const {
    if (s && p && o) return contains(IdTriple{*s, *p, *o}) ? 1 : 0;
    std::size_t best = triples_.size();
    if (s) best = std::min(best, lookup(by_s_, *s)->size());
    if (p && o) best = std::min(best, lookup_po(*p, *o)->size());
    else if (o) best = std::min(best, lookup(by_o_, *o)->size());
    else if (p) best = std::min(best, lookup(by_p_, *p)->size());
    return best;
  }

  // Sorts by the rendered (subject, predicate, object) strings.
  void sort_canonical(std::vector<IdTriple>& ids) const {
    std::sort(ids.begin(), ids.end(), [this](const IdTriple& a, const IdTriple& b) { return canonical_less(a, b); });
  }

  bool canonical_less(const IdTriple& a, const IdTriple& b) const {
    if (a.s != b.s) {
      if (int c = rendered_[a.s].compare(rendered_[b.s]); c != 0) return c < 0;
    }
    if (a.p != b.p) {
      if (int c = rendered_[a.p].compare(rendered_[b.p]); c != 0) return c < 0;
    }
    if (a.o != b.o) return rendered_[a.o] < rendered_[b.o];
    return false;
  }

  Triple to_triple(const IdTriple& t) const { return Triple(terms_[t.s], terms_[t.p], terms_[t.o]); }

  std::vector<Triple> to_triples(std::span<const IdTriple> ids) const {
    std::vector<Triple> out;
    out.reserve(ids.size());
    for (const auto& t : ids) out.push_back(to_triple(t));
    return out;
  }

  // Set equality over terms, independent of dictionary layout.
  friend bool operator==(const TripleStore& a, const TripleStore& b) {
    if (a.size() != b.size()) return false;
    for (const auto& t : a.triples_) {
      auto s = b.find(a.terms_[t.s]);
      auto p = b.find(a.terms_[t.p]);
      auto o = b.find(a.terms_[t.o]);
      if (!s || !p || !o || !b.contains(IdTriple{*s, *p, *o})) return false;
    }
    return true;
  }

  // True when every triple of `this` is in `other`.
  bool is_subset_of(const TripleStore& other) const {
    for (const auto& t : triples_) {
      auto s = other.find(terms_[t.s]);
      auto p = other.find(terms_[t.p]);
      auto o = other.find(terms_[t.o]);
      if (!s || !p || !o || !other.contains(IdTriple{*s, *p, *o})) return false;
    }
    return true;
  }

 private:
  using Index = std::unordered_map<TermId, std::vector<std::uint32_t>>;

  static std::uint64_t po_key(TermId p, TermId o) { return (static_cast<std::uint64_t>(p) << 32) | o; }

  static const std::vector<std::uint32_t>* lookup(const Index& index, TermId id) {
    static const std::vector<std::uint32_t> none;
    auto it = index.find(id);
    return it == index.end() ? &none : &it->second;
  }

  const std::vector<std::uint32_t>* lookup_po(TermId p, TermId o) const {
    static const std::vector<std::uint32_t> none;
    auto it = by_po_.find(po_key(p, o));
    return it == by_po_.end() ? &none : &it->second;
  }

  std::vector<Term> terms_;
  std::vector<std::string> rendered_;
  std::unordered_map<Term, TermId> ids_;

  std::vector<IdTriple> triples_;
  std::unordered_set<IdTriple, IdTripleHash> set_;
  Index by_s_;
  Index by_p_;
  Index by_o_;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> by_po_;
};

}  // namespace arco::rdf
