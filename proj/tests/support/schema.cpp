#include "schema.hpp"

#include <fstream>
#include <stdexcept>

namespace schema {

using nlohmann::json;

Validator::Validator(json root) : root_(std::move(root)) {}

Validator Validator::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return Validator(json::parse(in));
}

const json& Validator::resolve(const json& schema) const {
  const json* s = &schema;
  while (s->contains("$ref")) {
    const std::string ref = (*s)["$ref"].get<std::string>();
    const std::string prefix = "#/definitions/";
    if (ref.rfind(prefix, 0) != 0) throw std::runtime_error("unsupported $ref " + ref);
    s = &root_.at("definitions").at(ref.substr(prefix.size()));
  }
  return *s;
}

namespace {

bool has_type(const json& value, const std::string& type) {
  if (type == "null") return value.is_null();
  if (type == "object") return value.is_object();
  if (type == "array") return value.is_array();
  if (type == "string") return value.is_string();
  if (type == "boolean") return value.is_boolean();
  if (type == "integer") return value.is_number_integer();
  if (type == "number") return value.is_number();
  throw std::runtime_error("unknown schema type " + type);
}

}  // namespace

void Validator::walk(const json& raw, const json& value, const std::string& where,
                     std::vector<std::string>& problems) const {
  const json& s = resolve(raw);

  if (s.contains("oneOf")) {
    int matches = 0;
    for (const auto& option : s["oneOf"]) {
      std::vector<std::string> sub;
      walk(option, value, where, sub);
      if (sub.empty()) ++matches;
    }
    if (matches != 1)
      problems.push_back(where + ": matches " + std::to_string(matches) + " oneOf branches");
    return;
  }

  if (s.contains("type")) {
    bool ok = false;
    if (s["type"].is_array()) {
      for (const auto& t : s["type"]) ok = ok || has_type(value, t.get<std::string>());
    } else {
      ok = has_type(value, s["type"].get<std::string>());
    }
    if (!ok) {
      problems.push_back(where + ": expected type " + s["type"].dump() + ", got " + value.dump());
      return;
    }
  }

  if (s.contains("enum")) {
    bool found = false;
    for (const auto& e : s["enum"]) found = found || e == value;
    if (!found) problems.push_back(where + ": " + value.dump() + " not in " + s["enum"].dump());
  }

  if (value.is_number()) {
    const double v = value.get<double>();
    if (s.contains("minimum") && v < s["minimum"].get<double>())
      problems.push_back(where + ": " + value.dump() + " below minimum");
    if (s.contains("maximum") && v > s["maximum"].get<double>())
      problems.push_back(where + ": " + value.dump() + " above maximum");
  }

  if (value.is_object()) {
    if (s.contains("required"))
      for (const auto& key : s["required"])
        if (!value.contains(key.get<std::string>()))
          problems.push_back(where + ": missing required '" + key.get<std::string>() + "'");
    if (s.contains("properties"))
      for (const auto& [key, sub] : s["properties"].items())
        if (value.contains(key)) walk(sub, value[key], where + "." + key, problems);
  }

  if (value.is_array()) {
    if (s.contains("minItems") && value.size() < s["minItems"].get<std::size_t>())
      problems.push_back(where + ": fewer than " + s["minItems"].dump() + " items");
    if (s.contains("items"))
      for (std::size_t i = 0; i < value.size(); ++i)
        walk(s["items"], value[i], where + "[" + std::to_string(i) + "]", problems);
  }
}

std::vector<std::string> Validator::check(const std::string& name, const json& value) const {
  std::vector<std::string> problems;
  walk(root_.at("responses").at(name), value, name, problems);
  return problems;
}

std::string join(const std::vector<std::string>& problems) {
  std::string out;
  for (const auto& p : problems) out += p + "\n";
  return out;
}

}  // namespace schema
