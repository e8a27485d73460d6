#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "arco/error.hpp"
#include "arco/rdf/store.hpp"
#include "arco/text.hpp"
#include "arco/vocab.hpp"

namespace arco::linker {

using TokenSet = std::set<std::string>;

// Lowercased runs of letters/digits.
inline TokenSet tokenize_label(std::string_view label) {
  TokenSet tokens;
  std::string current;
  for (std::size_t pos = 0; pos < label.size();) {
    const char32_t c = utf8::next(label, pos);
    if (text::is_word_char(c)) {
      utf8::append(current, text::to_lower(c));
    } else if (!current.empty()) {
      tokens.insert(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.insert(std::move(current));
  return tokens;
}

inline double jaccard(const TokenSet& a, const TokenSet& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t shared = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++shared;
      ++i;
      ++j;
    }
  }
  return static_cast<double>(shared) / static_cast<double>(a.size() + b.size() - shared);
}

struct LinkerConfig {
  double threshold = 0.9;
  std::set<std::string> classes = {vocab::core("Agent"), vocab::loc("Place")};
  std::string label_predicate = vocab::label();
};

struct LinkCandidate {
  rdf::Term source;
  rdf::Term target;
  double score;
};

struct LinkReport {
  std::size_t source_entities = 0;
  std::size_t target_entities = 0;
  std::size_t pairs_scored = 0;
  std::size_t links = 0;
  std::size_t skipped_unlabelled = 0;
  std::vector<LinkCandidate> candidates;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["source_entities"] = source_entities;
    j["target_entities"] = target_entities;
    j["pairs_scored"] = pairs_scored;
    j["links_emitted"] = links;
    j["skipped_unlabelled"] = skipped_unlabelled;
    auto& rows = j["links"] = nlohmann::ordered_json::array();
    for (const auto& c : candidates)
      rows.push_back({{"source", c.source.value()}, {"target", c.target.value()}, {"score", c.score}});
    return j;
  }
};

// "agents" and "places" are shorthands; anything else must be an absolute
// IRI or a prefixed name under the standard prefixes.
inline std::set<std::string> parse_class_list(std::string_view list) {
  std::set<std::string> out;
  std::string item;
  std::istringstream in{std::string(list)};
  while (std::getline(in, item, ',')) {
    item = text::collapse_space(item);
    if (item.empty()) continue;
    if (item == "agents") {
      out.insert(vocab::core("Agent"));
    } else if (item == "places") {
      out.insert(vocab::loc("Place"));
    } else if (item.front() == '<' && item.back() == '>') {
      out.insert(item.substr(1, item.size() - 2));
    } else if (auto colon = item.find(':'); colon != std::string::npos) {
      const auto& prefixes = vocab::standard_prefixes();
      auto it = prefixes.find(item.substr(0, colon));
      if (it == prefixes.end() || item.compare(colon + 1, 2, "//") == 0) {
        if (!rdf::has_scheme(item)) throw Error("unknown class '" + item + "'");
        out.insert(item);
      } else {
        out.insert(it->second + item.substr(colon + 1));
      }
    } else {
      throw Error("unknown class '" + item + "'");
    }
  }
  if (out.empty()) throw Error("empty class list");
  return out;
}

inline void check(const LinkerConfig& config) {
  if (!(config.threshold >= 0.0 && config.threshold <= 1.0)) throw Error("threshold must be within [0, 1]");
  if (config.classes.empty()) throw Error("at least one class is required");
}

// key = value lines: threshold, classes, label-predicate. '#' comments.
inline LinkerConfig load_config(std::string_view content, LinkerConfig config = {}) {
  std::istringstream in{std::string(content)};
  std::size_t number = 0;
  for (std::string line; std::getline(in, line);) {
    ++number;
    line = text::strip_comment(std::move(line));
    line = text::collapse_space(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected key = value", number);
    const std::string key = text::collapse_space(line.substr(0, eq));
    const std::string value = text::collapse_space(line.substr(eq + 1));
    try {
      if (key == "threshold") {
        std::size_t used = 0;
        config.threshold = std::stod(value, &used);
        if (used != value.size()) throw Error("bad number");
      } else if (key == "classes") {
        config.classes = parse_class_list(value);
      } else if (key == "label-predicate") {
        std::string iri = value.size() > 2 && value.front() == '<' ? value.substr(1, value.size() - 2) : value;
        if (!rdf::has_scheme(iri)) throw Error("not an absolute IRI");
        config.label_predicate = iri;
      } else {
        throw Error("unknown key");
      }
    } catch (const std::exception& e) {
      throw ParseError("'" + key + "': " + e.what(), number);
    }
  }
  check(config);
  return config;
}

namespace detail {

struct Entity {
  rdf::Term iri;
  std::string rendered;
  std::set<std::string> classes;  // restrict-to classes the entity carries
  std::vector<TokenSet> labels;
};

inline std::vector<Entity> collect(const rdf::TripleStore& store, const LinkerConfig& config, std::size_t& unlabelled) {
  std::map<std::string, Entity> by_iri;
  const rdf::Term type = rdf::Term::iri(vocab::type());
  for (const auto& cls : config.classes) {
    for (const auto& t : store.match({std::nullopt, type, rdf::Term::iri(cls)})) {
      if (!t.subject().is_iri()) continue;
      auto [it, fresh] = by_iri.try_emplace(t.subject().value());
      if (fresh) {
        it->second.iri = t.subject();
        it->second.rendered = t.subject().to_string();
      }
      it->second.classes.insert(cls);
    }
  }
  const rdf::Term label = rdf::Term::iri(config.label_predicate);
  std::vector<Entity> out;
  for (auto& [iri, entity] : by_iri) {
    for (const auto& t : store.match({entity.iri, label, std::nullopt}))
      if (t.object().is_literal()) entity.labels.push_back(tokenize_label(t.object().value()));
    if (entity.labels.empty()) {
      ++unlabelled;
      continue;
    }
    out.push_back(std::move(entity));
  }
  return out;
}

inline bool share_class(const Entity& a, const Entity& b) {
  for (const auto& c : a.classes)
    if (b.classes.contains(c)) return true;
  return false;
}

inline double best_score(const Entity& a, const Entity& b) {
  double best = 0.0;
  for (const auto& x : a.labels)
    for (const auto& y : b.labels) best = std::max(best, jaccard(x, y));
  return best;
}

}  // namespace detail

// Candidates are scored only when they share a token (or both carry a label
// with no tokens); any other pair scores 0, so the result equals the all-pairs
// computation. A threshold of 0 falls back to all pairs. An IRI present in
// both stores is not linked to itself.
inline LinkReport discover(const rdf::TripleStore& source, const rdf::TripleStore& target,
                           const LinkerConfig& config = {}) {
  check(config);
  LinkReport report;
  const auto left = detail::collect(source, config, report.skipped_unlabelled);
  const auto right = detail::collect(target, config, report.skipped_unlabelled);
  report.source_entities = left.size();
  report.target_entities = right.size();

  static const std::string empty_key = std::string(1, '\0');
  std::unordered_map<std::string, std::vector<std::size_t>> index;
  for (std::size_t j = 0; j < right.size(); ++j) {
    for (const auto& labels : right[j].labels) {
      if (labels.empty()) index[empty_key].push_back(j);
      for (const auto& token : labels) index[token].push_back(j);
    }
  }

  std::vector<std::size_t> candidates;
  std::vector<char> seen(right.size(), 0);
  for (const auto& a : left) {
    candidates.clear();
    if (config.threshold <= 0.0) {
      for (std::size_t j = 0; j < right.size(); ++j) candidates.push_back(j);
    } else {
      auto take = [&](const std::string& key) {
        auto it = index.find(key);
        if (it == index.end()) return;
        for (std::size_t j : it->second)
          if (!seen[j]) {
            seen[j] = 1;
            candidates.push_back(j);
          }
      };
      for (const auto& labels : a.labels) {
        if (labels.empty()) take(empty_key);
        for (const auto& token : labels) take(token);
      }
      for (std::size_t j : candidates) seen[j] = 0;
    }
    for (std::size_t j : candidates) {
      const auto& b = right[j];
      if (a.iri == b.iri || !detail::share_class(a, b)) continue;
      ++report.pairs_scored;
      const double score = detail::best_score(a, b);
      if (score >= config.threshold) report.candidates.push_back({a.iri, b.iri, score});
    }
  }
  std::sort(report.candidates.begin(), report.candidates.end(), [](const LinkCandidate& x, const LinkCandidate& y) {
    if (x.source.value() != y.source.value()) return x.source.value() < y.source.value();
    return x.target.value() < y.target.value();
  });
  report.links = report.candidates.size();
  return report;
}

inline std::vector<rdf::Triple> to_same_as(const std::vector<LinkCandidate>& links) {
  std::vector<rdf::Triple> out;
  const rdf::Term same_as = rdf::Term::iri(vocab::same_as());
  for (const auto& c : links) out.emplace_back(c.source, same_as, c.target);
  return out;
}

inline std::vector<rdf::Triple> discover_links(const rdf::TripleStore& source, const rdf::TripleStore& target,
                                               const LinkerConfig& config = {}) {
  return to_same_as(discover(source, target, config).candidates);
}

}  // namespace arco::linker
