#include "policystory/util/json_schema.hpp"

#include <regex>

namespace policystory {
namespace {

using nlohmann::json;

bool has_type(const json& v, const std::string& type) {
  if (type == "object") return v.is_object();
  if (type == "array") return v.is_array();
  if (type == "string") return v.is_string();
  if (type == "integer") return v.is_number_integer();
  if (type == "number") return v.is_number();
  if (type == "boolean") return v.is_boolean();
  if (type == "null") return v.is_null();
  return false;
}

class Validator {
 public:
  explicit Validator(const json& root) : root_(root) {}

  void check(const json& schema, const json& v, const std::string& at) {
    if (schema.is_boolean()) {
      if (!schema.get<bool>()) fail(at, "value not allowed");
      return;
    }
    if (auto ref = schema.find("$ref"); ref != schema.end()) {
      check(resolve(ref->get<std::string>()), v, at);
      return;
    }
    if (auto t = schema.find("type"); t != schema.end()) {
      bool ok = false;
      if (t->is_string()) {
        ok = has_type(v, t->get<std::string>());
      } else {
        for (const auto& alt : *t) ok = ok || has_type(v, alt.get<std::string>());
      }
      if (!ok) {
        fail(at, "expected type " + t->dump() + ", got " + v.type_name());
        return;
      }
    }
    if (auto e = schema.find("enum"); e != schema.end()) {
      bool ok = false;
      for (const auto& alt : *e) ok = ok || alt == v;
      if (!ok) fail(at, "value " + v.dump() + " not in enum");
    }
    if (auto c = schema.find("const"); c != schema.end() && *c != v) {
      fail(at, "expected constant " + c->dump());
    }
    if (v.is_number()) {
      if (auto m = schema.find("minimum"); m != schema.end() && v.get<double>() < m->get<double>()) {
        fail(at, "below minimum " + m->dump());
      }
      if (auto m = schema.find("maximum"); m != schema.end() && v.get<double>() > m->get<double>()) {
        fail(at, "above maximum " + m->dump());
      }
    }
    if (v.is_string()) {
      const auto& s = v.get_ref<const std::string&>();
      if (auto m = schema.find("minLength"); m != schema.end() && s.size() < m->get<std::size_t>()) {
        fail(at, "shorter than minLength " + m->dump());
      }
      if (auto p = schema.find("pattern"); p != schema.end()) {
        if (!std::regex_search(s, std::regex(p->get<std::string>()))) {
          fail(at, "does not match pattern " + p->dump());
        }
      }
    }
    if (v.is_array()) {
      if (auto m = schema.find("minItems"); m != schema.end() && v.size() < m->get<std::size_t>()) {
        fail(at, "fewer than minItems " + m->dump());
      }
      if (auto items = schema.find("items"); items != schema.end()) {
        for (std::size_t i = 0; i < v.size(); ++i) check(*items, v[i], at + "/" + std::to_string(i));
      }
    }
    if (v.is_object()) check_object(schema, v, at);
    if (auto any = schema.find("anyOf"); any != schema.end()) {
      if (count_matching(*any, v) == 0) fail(at, "matches none of anyOf");
    }
    if (auto one = schema.find("oneOf"); one != schema.end()) {
      if (count_matching(*one, v) != 1) fail(at, "must match exactly one of oneOf");
    }
  }

  std::vector<std::string> errors;

 private:
  void check_object(const json& schema, const json& v, const std::string& at) {
    if (auto req = schema.find("required"); req != schema.end()) {
      for (const auto& name : *req) {
        if (!v.contains(name.get<std::string>())) {
          fail(at, "missing required property '" + name.get<std::string>() + "'");
        }
      }
    }
    const json* props = nullptr;
    if (auto p = schema.find("properties"); p != schema.end()) props = &*p;
    auto additional = schema.find("additionalProperties");
    for (const auto& [key, value] : v.items()) {
      std::string child = at + "/" + key;
      if (props && props->contains(key)) {
        check((*props)[key], value, child);
      } else if (additional != schema.end()) {
        if (additional->is_boolean()) {
          if (!additional->get<bool>()) fail(child, "unexpected property");
        } else {
          check(*additional, value, child);
        }
      }
    }
  }

  std::size_t count_matching(const json& alternatives, const json& v) {
    std::size_t n = 0;
    for (const auto& alt : alternatives) {
      Validator sub(root_);
      sub.check(alt, v, "");
      if (sub.errors.empty()) ++n;
    }
    return n;
  }

  const json& resolve(const std::string& ref) {
    static const json kFalse = false;
    if (ref.rfind("#/", 0) != 0) return kFalse;
    try {
      return root_.at(json::json_pointer(ref.substr(1)));
    } catch (const json::exception&) {
      return kFalse;
    }
  }

  void fail(const std::string& at, const std::string& msg) {
    errors.push_back((at.empty() ? "/" : at) + ": " + msg);
  }

  const json& root_;
};

}  // namespace

std::vector<std::string> validate_json(const nlohmann::json& schema,
                                       const nlohmann::json& instance) {
  Validator v(schema);
  v.check(schema, instance, "");
  return std::move(v.errors);
}

}  // namespace policystory
