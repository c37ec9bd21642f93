#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace detvar {

// Every error carries a short machine-parsable code next to the human
// message. The CLI maps codes to exit status: domain/hypothesis -> 1,
// malformed input -> 2.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

// Out-of-range parameters (s > n, negative counts, length mismatches, ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error("E_DOMAIN", what) {}

protected:
    DomainError(std::string code, const std::string& what)
        : Error(std::move(code), what) {}
};

// A formula's standing hypothesis fails (e.g. q below the dimension bound).
class HypothesisError : public DomainError {
public:
    explicit HypothesisError(const std::string& what)
        : DomainError("E_HYPOTHESIS", what) {}
};

// A required user-supplied analytic invariant is absent. Never defaulted.
class MissingInvariantError : public DomainError {
public:
    MissingInvariantError(long long stratum, const std::string& name)
        : DomainError("E_MISSING_INVARIANT",
                      "stratum " + std::to_string(stratum) +
                          ": required invariant '" + name + "' not supplied") {}
};

// Malformed input document: bad JSON, wrong types, unknown fields.
class SchemaError : public Error {
public:
    explicit SchemaError(const std::string& what) : Error("E_SCHEMA", what) {}
};

}  // namespace detvar
