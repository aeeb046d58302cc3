#pragma once

#include <json.hpp>
#include <string>

// Minimal structural validator for the draft-07 subset the shipped schemas
// use: type, required, properties, items, enum.
namespace wick::testing {

using nlohmann::json;

inline bool validate_against_schema(const json& value, const json& schema,
                                    std::string* err = nullptr,
                                    const std::string& path = "$") {
    auto fail = [&](const std::string& why) {
        if (err) *err = path + ": " + why;
        return false;
    };
    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& v : schema["enum"])
            if (v == value) ok = true;
        if (!ok) return fail("value not in enum");
    }
    if (schema.contains("type")) {
        const std::string t = schema["type"].get<std::string>();
        if (t == "object" && !value.is_object()) return fail("expected object");
        if (t == "array" && !value.is_array()) return fail("expected array");
        if (t == "string" && !value.is_string()) return fail("expected string");
        if (t == "boolean" && !value.is_boolean()) return fail("expected boolean");
        if (t == "integer" && !value.is_number_integer())
            return fail("expected integer");
        if (t == "number" && !value.is_number()) return fail("expected number");
    }
    if (value.is_object()) {
        if (schema.contains("required"))
            for (const auto& k : schema["required"])
                if (!value.contains(k.get<std::string>()))
                    return fail("missing required key " + k.get<std::string>());
        if (schema.contains("properties"))
            for (auto it = schema["properties"].begin();
                 it != schema["properties"].end(); ++it)
                if (value.contains(it.key()) &&
                    !validate_against_schema(value[it.key()], it.value(), err,
                                             path + "." + it.key()))
                    return false;
    }
    if (value.is_array() && schema.contains("items")) {
        size_t i = 0;
        for (const auto& v : value) {
            if (!validate_against_schema(v, schema["items"], err,
                                         path + "[" + std::to_string(i) + "]"))
                return false;
            ++i;
        }
    }
    return true;
}

}  // namespace wick::testing
