#pragma once

#include "detvar/binomial.hpp"
#include "detvar/errors.hpp"
#include "detvar/integer.hpp"

namespace detvar {

namespace detail {
inline void require_s_range(long long n, long long s, const char* who) {
    if (n < 1 || s < 1 || s > n)
        throw DomainError(std::string(who) + ": need 1 <= s <= n, got s=" +
                          std::to_string(s) + ", n=" + std::to_string(n));
}
}  // namespace detail

// sum_{i=2}^{s} (-1)^i C(n-1, i-1) C(n-i, s-i), evaluated term by term.
// The identity equates this with C(n-1, s-1). The source also displays
// C(n, s-1) at one point; both right-hand sides are reported so callers can
// see which one actually holds.
struct Lemma2Report {
    long long n = 0;
    long long s = 0;
    Integer lhs;
    Integer rhs_statement;  // C(n-1, s-1)
    Integer rhs_variant;    // C(n, s-1)
    bool statement_holds = false;
    bool variant_holds = false;
    bool in_stated_range = false;  // the sum starts at i = 2, so s >= 2
};

inline Lemma2Report check_lemma2(long long n, long long s) {
    detail::require_s_range(n, s, "check_lemma2");
    Lemma2Report report;
    report.n = n;
    report.s = s;
    for (long long i = 2; i <= s; ++i)
        report.lhs += neg_one_pow(i) * binomial(n - 1, i - 1) * binomial(n - i, s - i);
    report.rhs_statement = binomial(n - 1, s - 1);
    report.rhs_variant = binomial(n, s - 1);
    report.statement_holds = report.lhs == report.rhs_statement;
    report.variant_holds = report.lhs == report.rhs_variant;
    report.in_stated_range = s >= 2;
    return report;
}

inline bool verify_lemma2(long long n, long long s) {
    return check_lemma2(n, s).statement_holds;
}

// sum_{i=0}^{s-1} (-1)^{s-1+i} C(n-i-1, s-i-1) C(n, i), the "V" of entries
// in the Pascal triangle. The identity says the sum is 1.
inline Integer v_property_sum(long long n, long long s) {
    detail::require_s_range(n, s, "v_property_sum");
    Integer total = 0;
    for (long long i = 0; i <= s - 1; ++i)
        total += neg_one_pow(s - 1 + i) * binomial(n - i - 1, s - i - 1) * binomial(n, i);
    return total;
}

inline bool verify_v_property(long long n, long long s) {
    return v_property_sum(n, s) == 1;
}

}  // namespace detvar
