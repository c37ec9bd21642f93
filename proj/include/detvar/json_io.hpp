#pragma once

#include <nlohmann/json.hpp>

#include <cctype>
#include <set>
#include <string>

#include "detvar/errors.hpp"
#include "detvar/integer.hpp"

namespace detvar {

using Json = nlohmann::ordered_json;

// Largest integer a double-backed JSON consumer can hold exactly.
inline constexpr long long kJsonSafeMax = 9007199254740991LL;  // 2^53 - 1

// Integers beyond +/- (2^53 - 1) are emitted as decimal strings so consumers
// with double-precision parsers never round them.
inline Json integer_to_json(const Integer& v) {
    if (v >= -Integer(kJsonSafeMax) && v <= Integer(kJsonSafeMax))
        return Json(v.convert_to<long long>());
    return Json(v.str());
}

inline bool is_decimal_string(const std::string& s) {
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (start == s.size()) return false;
    for (std::size_t i = start; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

// Accepts a JSON integer or a decimal string (the two emitted forms).
inline Integer integer_from_json(const Json& j, const std::string& where) {
    if (j.is_number_integer()) {
        if (j.is_number_unsigned()) return Integer(j.get<unsigned long long>());
        return Integer(j.get<long long>());
    }
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (!is_decimal_string(s))
            throw SchemaError(where + ": '" + s + "' is not a decimal integer string");
        return Integer(s);
    }
    if (j.is_number_float())
        throw SchemaError(where + ": non-integral number; large integers must be decimal strings");
    throw SchemaError(where + ": expected integer or decimal string");
}

inline long long small_int_from_json(const Json& j, const std::string& where) {
    if (!j.is_number_integer())
        throw SchemaError(where + ": expected an integer");
    return j.get<long long>();
}

// Strict-schema guard: any key outside `allowed` is rejected.
inline void reject_unknown_fields(const Json& obj, const std::set<std::string>& allowed,
                                  const std::string& where) {
    if (!obj.is_object()) throw SchemaError(where + ": expected a JSON object");
    for (const auto& item : obj.items())
        if (!allowed.contains(item.key()))
            throw SchemaError(where + ": unknown field '" + item.key() + "'");
}

inline const Json& require_field(const Json& obj, const std::string& key,
                                 const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) throw SchemaError(where + ": missing field '" + key + "'");
    return *it;
}

}  // namespace detvar
