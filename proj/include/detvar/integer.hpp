#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <span>
#include <string>

namespace detvar {

// Every invariant computed here is an exact signed integer. No floating
// point anywhere; intermediate products routinely leave the 64-bit range.
using Integer = boost::multiprecision::cpp_int;

// (-1)^e for any integer exponent, negative exponents included.
constexpr int neg_one_pow(long long e) noexcept {
    return (e % 2 == 0) ? 1 : -1;
}

// start_sign * sum_j (-1)^j values[j]. Empty list sums to 0.
// start_sign must be +1 or -1.
inline Integer alternating_sum(std::span<const Integer> values, int start_sign = 1) {
    Integer total = 0;
    int sign = start_sign;
    for (const Integer& v : values) {
        total += sign * v;
        sign = -sign;
    }
    return total;
}

inline std::string to_string(const Integer& v) { return v.str(); }

}  // namespace detvar
