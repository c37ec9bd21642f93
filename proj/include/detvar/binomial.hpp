#pragma once

#include <vector>

#include "detvar/errors.hpp"
#include "detvar/integer.hpp"

namespace detvar {

// Extended binomial coefficient: C(a, b) for 0 <= b <= a, and 0 whenever
// b < 0, b > a or a < 0. The zero convention keeps every summation in this
// library well-defined at its edge indices.
inline Integer binomial(long long a, long long b) {
    if (a < 0 || b < 0 || b > a) return 0;
    if (b > a - b) b = a - b;
    Integer result = 1;
    for (long long i = 1; i <= b; ++i) {
        result *= a - b + i;
        result /= i;  // exact: i! divides any product of i consecutive integers
    }
    return result;
}

// Cached Pascal triangle, immutable after construction. Deliberately built
// from the addition recurrence alone so it can serve as a second route
// against the multiplicative binomial() above.
class BinomialTable {
public:
    explicit BinomialTable(long long capacity) {
        if (capacity < 0) throw DomainError("BinomialTable capacity must be >= 0");
        rows_.reserve(static_cast<std::size_t>(capacity) + 1);
        for (long long a = 0; a <= capacity; ++a) {
            std::vector<Integer> row(static_cast<std::size_t>(a) + 1, 1);
            for (long long b = 1; b < a; ++b)
                row[static_cast<std::size_t>(b)] =
                    rows_.back()[static_cast<std::size_t>(b - 1)] +
                    rows_.back()[static_cast<std::size_t>(b)];
            rows_.push_back(std::move(row));
        }
    }

    long long capacity() const { return static_cast<long long>(rows_.size()) - 1; }

    // Same extended convention as binomial(); rows beyond capacity are an error.
    Integer at(long long a, long long b) const {
        if (a > capacity())
            throw DomainError("BinomialTable: row " + std::to_string(a) +
                              " beyond capacity " + std::to_string(capacity()));
        if (a < 0 || b < 0 || b > a) return 0;
        return rows_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    }

    const std::vector<std::vector<Integer>>& rows() const { return rows_; }

private:
    std::vector<std::vector<Integer>> rows_;
};

}  // namespace detvar
