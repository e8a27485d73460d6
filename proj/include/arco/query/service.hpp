#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include "httplib.h"
#include "json.hpp"

#include "arco/query/bgp.hpp"
#include "arco/rdf/store.hpp"

namespace arco::query {

inline nlohmann::ordered_json term_json(const rdf::Term& t) {
  nlohmann::ordered_json j;
  switch (t.kind()) {
    case rdf::TermKind::iri:
      j["type"] = "uri";
      break;
    case rdf::TermKind::blank:
      j["type"] = "bnode";
      break;
    case rdf::TermKind::literal:
      j["type"] = "literal";
      break;
  }
  j["value"] = t.value();
  if (!t.language().empty()) j["xml:lang"] = t.language();
  if (!t.datatype().empty()) j["datatype"] = t.datatype();
  return j;
}

// SPARQL-results style: {"head":{"vars":[...]}, "results":{"bindings":[...]}}.
inline nlohmann::ordered_json results_json(const BGPQuery& query, const std::vector<Solution>& solutions) {
  nlohmann::ordered_json j;
  j["head"]["vars"] = query.select;
  auto& rows = j["results"]["bindings"] = nlohmann::ordered_json::array();
  for (const auto& s : solutions) {
    nlohmann::ordered_json row = nlohmann::ordered_json::object();
    for (const auto& var : query.select) row[var] = term_json(s.at(var));
    rows.push_back(std::move(row));
  }
  return j;
}

struct Response {
  int status;
  std::string body;
};

struct ServiceOptions {
  std::size_t max_query_bytes = 64 * 1024;
};

// The request handling, independent of the transport.
inline Response answer(const rdf::TripleStore& store, std::string_view query_text, const ServiceOptions& options = {}) {
  auto error = [](int status, const std::string& message) {
    return Response{status, nlohmann::ordered_json{{"error", message}}.dump()};
  };
  if (query_text.size() > options.max_query_bytes)
    return error(413, "query exceeds " + std::to_string(options.max_query_bytes) + " bytes");
  if (query_text.empty()) return error(400, "missing parameter 'q'");
  try {
    const BGPQuery query = parse_query(query_text);
    return {200, results_json(query, evaluate(query, store)).dump()};
  } catch (const ParseError& e) {
    return error(400, e.what());
  }
}

// GET/POST /query (parameter q; a POST may also send the query as the raw
// body with Content-Type application/sparql-query) and GET /health. The
// store must not be modified while the server runs.
class QueryService {
 public:
  QueryService(const rdf::TripleStore& store, ServiceOptions options = {}) : store_(store), options_(options) {
    server_.set_payload_max_length(options_.max_query_bytes * 4 + 1024);
    auto handle = [this](const httplib::Request& req, httplib::Response& res) {
      std::string text;
      if (req.has_param("q")) {
        text = req.get_param_value("q");
      } else if (req.method == "POST" && req.get_header_value("Content-Type").starts_with("application/sparql-query")) {
        text = req.body;
      }
      const Response r = answer(store_, text, options_);
      res.status = r.status;
      res.set_content(r.body, r.status == 200 ? "application/sparql-results+json" : "application/json");
    };
    server_.Get("/query", handle);
    server_.Post("/query", handle);
    server_.Get("/health", [this](const httplib::Request&, httplib::Response& res) {
      res.set_content(nlohmann::ordered_json{{"status", "ok"}, {"triples", store_.size()}}.dump(), "application/json");
    });
  }

  // Binds; port 0 picks a free port. Returns the bound port or -1.
  int bind(const std::string& host, int port) {
    if (port == 0) return server_.bind_to_any_port(host);
    return server_.bind_to_port(host, port) ? port : -1;
  }

  // Blocks until stop().
  bool listen() { return server_.listen_after_bind(); }
  void stop() { server_.stop(); }
  void wait_until_ready() const { server_.wait_until_ready(); }

 private:
  const rdf::TripleStore& store_;
  ServiceOptions options_;
  httplib::Server server_;
};

}  // namespace arco::query
