#pragma once

#include <map>
#include <string>
#include <string_view>

// IRIs of the standard vocabularies and of the ArCo ontology network.
namespace arco::vocab {

inline constexpr std::string_view rdf_ns = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view rdfs_ns = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view owl_ns = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view xsd_ns = "http://www.w3.org/2001/XMLSchema#";

inline constexpr std::string_view ontology_base = "https://w3id.org/arco/ontology/";
inline constexpr std::string_view resource_base = "https://w3id.org/arco/resource/";

inline std::string rdf(std::string_view local) { return std::string(rdf_ns) + std::string(local); }
inline std::string rdfs(std::string_view local) { return std::string(rdfs_ns) + std::string(local); }
inline std::string owl(std::string_view local) { return std::string(owl_ns) + std::string(local); }
inline std::string xsd(std::string_view local) { return std::string(xsd_ns) + std::string(local); }

// Namespace of one ArCo module, e.g. module_ns("location") ->
// "https://w3id.org/arco/ontology/location/".
inline std::string module_ns(std::string_view module) {
  return std::string(ontology_base) + std::string(module) + "/";
}

inline std::string arco(std::string_view local) { return module_ns("arco") + std::string(local); }
inline std::string core(std::string_view local) { return module_ns("core") + std::string(local); }
inline std::string cat(std::string_view local) { return module_ns("catalogue") + std::string(local); }
inline std::string loc(std::string_view local) { return module_ns("location") + std::string(local); }
inline std::string dd(std::string_view local) {
  return module_ns("denotative-description") + std::string(local);
}
inline std::string cd(std::string_view local) {
  return module_ns("context-description") + std::string(local);
}
inline std::string ce(std::string_view local) { return module_ns("cultural-event") + std::string(local); }

inline const std::string& type() {
  static const std::string iri = rdf("type");
  return iri;
}
inline const std::string& label() {
  static const std::string iri = rdfs("label");
  return iri;
}
inline const std::string& same_as() {
  static const std::string iri = owl("sameAs");
  return iri;
}
inline const std::string& xsd_string() {
  static const std::string iri = xsd("string");
  return iri;
}

// Prefixes understood by default in query text, suite files and mapping
// tables. `:` is the arco module.
inline const std::map<std::string, std::string>& standard_prefixes() {
  static const std::map<std::string, std::string> prefixes = {
      {"", module_ns("arco")},
      {"arco", module_ns("arco")},
      {"core", module_ns("core")},
      {"a-cat", module_ns("catalogue")},
      {"a-loc", module_ns("location")},
      {"a-dd", module_ns("denotative-description")},
      {"a-cd", module_ns("context-description")},
      {"a-ce", module_ns("cultural-event")},
      {"data", std::string(resource_base)},
      {"rdf", std::string(rdf_ns)},
      {"rdfs", std::string(rdfs_ns)},
      {"owl", std::string(owl_ns)},
      {"xsd", std::string(xsd_ns)},
  };
  return prefixes;
}

}  // namespace arco::vocab
