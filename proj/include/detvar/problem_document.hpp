#pragma once

#include <string>

#include "detvar/eids.hpp"
#include "detvar/json_io.hpp"

namespace detvar {

// On-disk description of an EIDS problem. Schema (strict, unknown fields
// rejected):
//   {
//     "schema_version": "1",          // optional on input, always emitted
//     "q": int, "n": int, "k": int, "t": int,
//     "strata": [ {"i": int, "chi_stab": int?, "m_top": int?, "eu0": int?}, ... ]
//   }
// Integer invariants may be decimal strings when they exceed 2^53 - 1.
struct ProblemDocument {
    std::string schema_version = "1";
    EidsProblem problem;

    bool operator==(const ProblemDocument&) const = default;
};

inline ProblemDocument parse_problem_document(const Json& doc) {
    reject_unknown_fields(doc, {"schema_version", "q", "n", "k", "t", "strata"},
                          "problem document");
    ProblemDocument out;
    if (doc.contains("schema_version")) {
        const Json& v = doc.at("schema_version");
        if (!v.is_string()) throw SchemaError("schema_version: expected a string");
        out.schema_version = v.get<std::string>();
    }
    out.problem.q = small_int_from_json(require_field(doc, "q", "problem document"), "q");
    out.problem.n = small_int_from_json(require_field(doc, "n", "problem document"), "n");
    out.problem.k = small_int_from_json(require_field(doc, "k", "problem document"), "k");
    out.problem.t = small_int_from_json(require_field(doc, "t", "problem document"), "t");

    const Json& strata = require_field(doc, "strata", "problem document");
    if (!strata.is_array()) throw SchemaError("strata: expected an array");
    for (const Json& entry : strata) {
        const std::string where = "strata entry";
        reject_unknown_fields(entry, {"i", "chi_stab", "m_top", "eu0"}, where);
        const long long i = small_int_from_json(require_field(entry, "i", where), "strata.i");
        if (out.problem.strata.contains(i))
            throw SchemaError("strata: duplicate entry for stratum " + std::to_string(i));
        StratumInvariants inv;
        if (entry.contains("chi_stab"))
            inv.chi_stab = integer_from_json(entry.at("chi_stab"), "chi_stab");
        if (entry.contains("m_top")) inv.m_top = integer_from_json(entry.at("m_top"), "m_top");
        if (entry.contains("eu0")) inv.eu0 = integer_from_json(entry.at("eu0"), "eu0");
        out.problem.strata.emplace(i, std::move(inv));
    }
    return out;
}

inline ProblemDocument parse_problem_document(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
    return parse_problem_document(doc);
}

inline Json problem_document_to_json(const ProblemDocument& doc) {
    Json out;
    out["schema_version"] = doc.schema_version;
    out["q"] = doc.problem.q;
    out["n"] = doc.problem.n;
    out["k"] = doc.problem.k;
    out["t"] = doc.problem.t;
    Json strata = Json::array();
    for (const auto& [i, inv] : doc.problem.strata) {  // std::map: ascending stratum order
        Json entry;
        entry["i"] = i;
        if (inv.chi_stab) entry["chi_stab"] = integer_to_json(*inv.chi_stab);
        if (inv.m_top) entry["m_top"] = integer_to_json(*inv.m_top);
        if (inv.eu0) entry["eu0"] = integer_to_json(*inv.eu0);
        strata.push_back(std::move(entry));
    }
    out["strata"] = std::move(strata);
    return out;
}

inline std::string emit_problem_document(const ProblemDocument& doc) {
    return problem_document_to_json(doc).dump(2) + "\n";
}

}  // namespace detvar
