#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "detvar/binomial.hpp"
#include "detvar/errors.hpp"
#include "detvar/integer.hpp"
#include "detvar/strata.hpp"

namespace detvar {

// Local Euler obstruction of Sigma^s at the origin, closed form: C(n, s-1).
// Independent of k.
inline Integer eu_closed(long long s, long long n) {
    detail::require_s_range(n, s, "eu_closed");
    return binomial(n, s - 1);
}

// The same value by the recurrence
//   e(s,n) = sum_{i=2}^{s} (chi_bar(i,n) - chi_bar(i-1,n)) e(s-i+1, n-i+1),
// base case e(1, m) = 1. Memoized per call; along the recursion n - s is
// constant, so the cache is keyed by s alone.
inline Integer eu_recurrence(long long s, long long n) {
    detail::require_s_range(n, s, "eu_recurrence");
    std::vector<std::optional<Integer>> memo(static_cast<std::size_t>(s) + 1);
    const std::function<Integer(long long, long long)> eval =
        [&](long long s1, long long n1) -> Integer {
        if (s1 == 1) return 1;
        auto& slot = memo[static_cast<std::size_t>(s1)];
        if (slot) return *slot;
        Integer total = 0;
        for (long long i = 2; i <= s1; ++i) {
            const auto [s2, n2] = normal_slice(s1, n1, i);
            total += (chi_bar_slice(i, n1) - chi_bar_slice(i - 1, n1)) * eval(s2, n2);
        }
        slot = total;
        return total;
    };
    return eval(s, n);
}

// Integer coefficients of a constructible function on the stratification of
// Sigma^s: coefficient i is the value on the open stratum
// Sigma^i \ Sigma^{i-1}. Independent of k like everything else here.
struct ConstructibleFunction {
    long long s = 0;
    long long n = 0;
    std::vector<Integer> coeffs;  // coeffs[i-1] = value on stratum i, i = 1..s

    const Integer& on_stratum(long long i) const {
        if (i < 1 || i > s)
            throw DomainError("ConstructibleFunction: stratum index " + std::to_string(i) +
                              " out of 1.." + std::to_string(s));
        return coeffs[static_cast<std::size_t>(i - 1)];
    }
};

// The Euler obstruction of Sigma^s as a constructible function:
// value C(n-i+1, s-i) on the stratum Sigma^i \ Sigma^{i-1}.
inline ConstructibleFunction eu_constructible(long long s, long long n) {
    detail::require_s_range(n, s, "eu_constructible");
    ConstructibleFunction f{s, n, {}};
    f.coeffs.reserve(static_cast<std::size_t>(s));
    for (long long i = 1; i <= s; ++i) f.coeffs.push_back(binomial(n - i + 1, s - i));
    return f;
}

// Aggregation kernel of the Lefschetz-type formula: the Euler obstruction is
// the dot product of per-stratum slice Euler characteristics with the
// per-stratum Euler obstruction values. Callers supply the chi of each
// *open* stratum slice (inclusion-exclusion already applied).
inline Integer eu_from_strata(std::span<const Integer> chi_slices,
                              std::span<const Integer> eu_values) {
    if (chi_slices.size() != eu_values.size())
        throw DomainError("eu_from_strata: list lengths differ (" +
                          std::to_string(chi_slices.size()) + " vs " +
                          std::to_string(eu_values.size()) + ")");
    Integer total = 0;
    for (std::size_t i = 0; i < chi_slices.size(); ++i) total += chi_slices[i] * eu_values[i];
    return total;
}

// chi of the generic slice of the open stratum Sigma^i \ Sigma^{i-1},
// i.e. chi_slice(i, n) - chi_slice(i-1, n) with the empty Sigma^0
// contributing 0.
inline Integer generic_open_slice_chi(long long i, long long n) {
    const Integer upper = chi_slice(i, n);
    const Integer lower = (i == 1) ? Integer(0) : chi_slice(i - 1, n);
    return upper - lower;
}

// Rows 0..rows of the triangle whose row n lists the Euler obstructions of
// the spaces Sigma^1 c ... c Sigma^n c Hom(C^n, C^{n+k}); the full space
// contributes 1. The output is exactly Pascal's triangle.
inline std::vector<std::vector<Integer>> pascal_triangle_of_spaces(long long rows) {
    if (rows < 0) throw DomainError("pascal_triangle_of_spaces: rows must be >= 0");
    std::vector<std::vector<Integer>> triangle;
    triangle.reserve(static_cast<std::size_t>(rows) + 1);
    for (long long n = 0; n <= rows; ++n) {
        std::vector<Integer> row;
        row.reserve(static_cast<std::size_t>(n) + 1);
        for (long long i = 0; i < n; ++i) row.push_back(eu_closed(i + 1, n));
        row.push_back(1);
        triangle.push_back(std::move(row));
    }
    return triangle;
}

}  // namespace detvar
