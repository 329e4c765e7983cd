#ifndef GCURV_SCHEMA_CHECK_HPP
#define GCURV_SCHEMA_CHECK_HPP

#include <stdexcept>
#include <string>

#include <json.hpp>

namespace gcurv::testing {

// Minimal JSON-schema walker covering the subset our schemas use:
// type (string or list), const, enum, required, properties, items, $ref.
inline void check_schema(const nlohmann::json& doc, const nlohmann::json& schema,
                         const nlohmann::json& root, const std::string& path) {
  using nlohmann::json;
  auto fail = [&](const std::string& what) {
    throw std::runtime_error("schema violation at " + (path.empty() ? "/" : path) + ": " + what);
  };

  if (schema.contains("$ref")) {
    std::string ref = schema["$ref"].get<std::string>();
    const std::string prefix = "#/definitions/";
    if (ref.rfind(prefix, 0) != 0) fail("unsupported $ref " + ref);
    return check_schema(doc, root.at("definitions").at(ref.substr(prefix.size())), root, path);
  }

  auto type_matches = [&](const std::string& t) {
    if (t == "object") return doc.is_object();
    if (t == "array") return doc.is_array();
    if (t == "number") return doc.is_number();
    if (t == "string") return doc.is_string();
    if (t == "boolean") return doc.is_boolean();
    if (t == "null") return doc.is_null();
    return false;
  };
  if (schema.contains("type")) {
    const auto& type = schema["type"];
    bool ok = false;
    if (type.is_string()) ok = type_matches(type.get<std::string>());
    else
      for (const auto& t : type) ok = ok || type_matches(t.get<std::string>());
    if (!ok) fail("type mismatch (got " + std::string(doc.type_name()) + ")");
  }
  if (schema.contains("const") && doc != schema["const"]) fail("const mismatch");
  if (schema.contains("enum")) {
    bool ok = false;
    for (const auto& v : schema["enum"]) ok = ok || doc == v;
    if (!ok) fail("value not in enum");
  }
  if (schema.contains("required"))
    for (const auto& key : schema["required"])
      if (!doc.contains(key.get<std::string>()))
        fail("missing required field " + key.get<std::string>());
  if (schema.contains("properties") && doc.is_object())
    for (auto& [key, sub] : schema["properties"].items())
      if (doc.contains(key)) check_schema(doc.at(key), sub, root, path + "/" + key);
  if (schema.contains("items") && doc.is_array()) {
    std::size_t i = 0;
    for (const auto& el : doc)
      check_schema(el, schema["items"], root, path + "/" + std::to_string(i++));
  }
}

/// Validates a gcurv result envelope, dispatching `result` to the
/// per-command definition.
inline void check_result_document(const nlohmann::json& doc, const nlohmann::json& schema) {
  check_schema(doc, schema, schema, "");
  std::string command = doc.at("command").get<std::string>();
  check_schema(doc.at("result"), schema.at("definitions").at(command + "_result"), schema,
               "/result");
}

}  // namespace gcurv::testing

#endif
