#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace schema {

/// Validator for the JSON Schema subset used in docs/api_schemas.json:
/// type (string or list), properties, required, items, enum, minItems,
/// minimum, maximum, oneOf and local $ref.
class Validator {
 public:
  explicit Validator(nlohmann::json root);
  static Validator from_file(const std::string& path);

  /// Validates against responses/<name>; returns one message per problem.
  std::vector<std::string> check(const std::string& name, const nlohmann::json& value) const;

 private:
  void walk(const nlohmann::json& schema, const nlohmann::json& value, const std::string& where,
            std::vector<std::string>& problems) const;
  const nlohmann::json& resolve(const nlohmann::json& schema) const;

  nlohmann::json root_;
};

std::string join(const std::vector<std::string>& problems);

}  // namespace schema
