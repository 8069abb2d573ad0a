#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace policystory {

// Validator for the JSON Schema subset used by the published schemas:
// type (string or list), properties, required, additionalProperties (bool or
// schema), items, enum, const, minimum, maximum, minItems, minLength, pattern,
// oneOf, anyOf and local "$ref": "#/definitions/...". Returns one message per
// violation, each prefixed with the JSON pointer of the offending value.
std::vector<std::string> validate_json(const nlohmann::json& schema,
                                       const nlohmann::json& instance);

}  // namespace policystory
