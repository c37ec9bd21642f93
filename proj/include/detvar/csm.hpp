#pragma once

#include <vector>

#include "detvar/euler.hpp"
#include "detvar/strata.hpp"

namespace detvar {

// The local Chern-Schwartz-MacPherson cycle of Sigma^s: an integer
// combination of the cycles [Sigma^{i+1}], i = 0..s-1, whose Euler
// obstruction evaluates to 1 at every point. The same coefficients expand
// the CSM class in Chern-Mather classes.
struct CsmCycle {
    long long s = 0;
    long long n = 0;
    std::vector<Integer> coeffs;  // coeffs[i] multiplies [Sigma^{i+1}]
};

// coeffs[i] = (-1)^{s-1+i} C(n-i-1, s-i-1).
inline CsmCycle csm_cycle(long long s, long long n) {
    detail::require_s_range(n, s, "csm_cycle");
    CsmCycle cycle{s, n, {}};
    cycle.coeffs.reserve(static_cast<std::size_t>(s));
    for (long long i = 0; i <= s - 1; ++i)
        cycle.coeffs.push_back(neg_one_pow(s - 1 + i) * binomial(n - i - 1, s - i - 1));
    return cycle;
}

// Euler obstruction of the weighted cycle at a point of the open stratum
// Sigma^j \ Sigma^{j-1}: cycles [Sigma^{i+1}] with i+1 < j miss the point,
// the rest contribute through the normal-slice reduction
// Eu_p(Sigma^{i+1}) = e(i-j+2, n-j+1). A well-formed CSM cycle returns 1
// for every j.
inline Integer evaluate_cycle_at_stratum(const CsmCycle& cycle, long long j) {
    if (j < 1 || j > cycle.s)
        throw DomainError("evaluate_cycle_at_stratum: j=" + std::to_string(j) +
                          " out of 1.." + std::to_string(cycle.s));
    Integer total = 0;
    for (long long i = j - 1; i <= cycle.s - 1; ++i)
        total += cycle.coeffs[static_cast<std::size_t>(i)] *
                 eu_closed(i - j + 2, cycle.n - j + 1);
    return total;
}

// Coefficient of c_CM(Sigma^{i+1}) in the polar class [P_{d-d_{i+1}}(Sigma^s)]:
// sign (-1)^{s + dim Sigma^{i+1}} and magnitude C(n-i+1, s-i-1). The parity
// exponent mixes the global stratum dimension into the local formula, so it
// is returned for audit, together with the nearby CSM coefficient magnitude
// C(n-i-1, s-i-1) whose top argument differs.
struct PolarClassCoefficient {
    int sign = 1;
    Integer magnitude;
    long long parity_exponent = 0;
    Integer csm_magnitude;
};

inline PolarClassCoefficient polar_class_coefficient(const StrataSpec& spec, long long i) {
    spec.validate();
    if (i < 0 || i >= spec.s)
        throw DomainError("polar_class_coefficient: i=" + std::to_string(i) +
                          " out of 0.." + std::to_string(spec.s - 1));
    PolarClassCoefficient out;
    out.parity_exponent = spec.s + stratum_dim(spec.n, spec.k, i + 1);
    out.sign = neg_one_pow(out.parity_exponent);
    out.magnitude = binomial(spec.n - i + 1, spec.s - i - 1);
    out.csm_magnitude = binomial(spec.n - i - 1, spec.s - i - 1);
    return out;
}

}  // namespace detvar
