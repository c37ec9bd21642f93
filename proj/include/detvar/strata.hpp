#pragma once

#include <string>
#include <utility>

#include "detvar/binomial.hpp"
#include "detvar/errors.hpp"
#include "detvar/integer.hpp"

namespace detvar {

// The rank stratification of Hom(C^n, C^{n+k}): Sigma^s is the variety of
// matrices of rank < s, stratified by Sigma^1 = {0} up to the smooth open
// part Sigma^s \ Sigma^{s-1}.
struct StrataSpec {
    long long n = 1;  // rows
    long long k = 0;  // column excess, matrices are n x (n+k)
    long long s = 1;  // rank bound: Sigma^s = { rank < s }

    void validate() const {
        if (n < 1) throw DomainError("StrataSpec: n must be >= 1, got " + std::to_string(n));
        if (k < 0) throw DomainError("StrataSpec: k must be >= 0, got " + std::to_string(k));
        if (s < 1 || s > n)
            throw DomainError("StrataSpec: s must satisfy 1 <= s <= n, got s=" +
                              std::to_string(s) + ", n=" + std::to_string(n));
    }

    long long ambient_dim() const { return n * (n + k); }
};

struct StrataGeometry {
    Integer codim;
    Integer dim;
};

// codim Sigma^s = (n-s+1)(n+k-s+1) in the n(n+k)-dimensional matrix space.
inline StrataGeometry strata_geometry(const StrataSpec& spec) {
    spec.validate();
    const long long codim = (spec.n - spec.s + 1) * (spec.n + spec.k - spec.s + 1);
    return {Integer(codim), Integer(spec.ambient_dim() - codim)};
}

inline long long stratum_dim(long long n, long long k, long long i) {
    StrataGeometry g = strata_geometry({n, k, i});
    return g.dim.convert_to<long long>();
}

// A normal slice to Sigma^i reduces the pair (s, n) to (s-i+1, n-i+1):
// cutting the rank-(i-1) block leaves a smaller generic determinantal variety.
inline std::pair<long long, long long> normal_slice(long long s, long long n, long long i) {
    if (!(1 <= i && i <= s && s <= n))
        throw DomainError("normal_slice: need 1 <= i <= s <= n, got i=" + std::to_string(i) +
                          ", s=" + std::to_string(s) + ", n=" + std::to_string(n));
    return {s - i + 1, n - i + 1};
}

// Reduced Euler characteristic of the generic hyperplane slice of Sigma^i:
// (-1)^i C(n-1, i-1). Does not depend on k.
inline Integer chi_bar_slice(long long i, long long n) {
    if (!(1 <= i && i <= n))
        throw DomainError("chi_bar_slice: need 1 <= i <= n, got i=" + std::to_string(i) +
                          ", n=" + std::to_string(n));
    return neg_one_pow(i) * binomial(n - 1, i - 1);
}

// Plain Euler characteristic of the same slice. The slice of Sigma^1 = {0}
// is the empty nearby fiber, so chi_slice(1, n) = 0.
inline Integer chi_slice(long long i, long long n) {
    return 1 + chi_bar_slice(i, n);
}

}  // namespace detvar
