#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "detvar/binomial.hpp"
#include "detvar/errors.hpp"
#include "detvar/euler.hpp"
#include "detvar/integer.hpp"
#include "detvar/strata.hpp"

namespace detvar {

// ---------------------------------------------------------------------------
// Essentially isolated determinantal singularities X = F^{-1}(Sigma^t) for an
// analytic F : C^q -> Hom(C^n, C^{n+k}). The analytic invariants of the
// strata _iX = F^{-1}(Sigma^i) cannot be computed from (q, n, k, t) alone;
// they are accepted as explicit inputs and never silently defaulted.
// ---------------------------------------------------------------------------

struct StratumInvariants {
    std::optional<Integer> chi_stab;  // chi of the stabilization of _iX (ICIS stratum, i = 1)
    std::optional<Integer> m_top;     // top polar multiplicity m_{d(i)}(_iX), i >= 2
    std::optional<Integer> eu0;       // Eu_0(_iX), i >= 2

    bool operator==(const StratumInvariants&) const = default;
};

struct EidsProblem {
    long long q = 1;
    long long n = 1;
    long long k = 0;
    long long t = 1;
    std::map<long long, StratumInvariants> strata;  // keyed by stratum index 1..t

    void validate() const {
        if (q < 1) throw DomainError("EidsProblem: q must be >= 1, got " + std::to_string(q));
        StrataSpec{n, k, t}.validate();
        for (const auto& [i, inv] : strata) {
            (void)inv;
            if (i < 1 || i > t)
                throw DomainError("EidsProblem: stratum index " + std::to_string(i) +
                                  " out of 1.." + std::to_string(t));
        }
    }

    // dim _iX = q - codim Sigma^i; negative iff q < n(n+k) for some i.
    long long d(long long i) const {
        return q - (n - i + 1) * (n + k - i + 1);
    }

    bool operator==(const EidsProblem&) const = default;
};

inline void require_stabilization_hypothesis(long long q, long long n, long long k) {
    if (q < n * (n + k))
        throw HypothesisError("stabilization formulas require q >= n(n+k); got q=" +
                              std::to_string(q) + " < " + std::to_string(n * (n + k)));
}

// n_{it} = (-1)^{k(t-i)} C(n-i, n-t).
inline Integer n_coefficient(long long i, long long t, long long n, long long k) {
    if (!(1 <= i && i <= t && t <= n))
        throw DomainError("n_coefficient: need 1 <= i <= t <= n, got i=" + std::to_string(i) +
                          ", t=" + std::to_string(t) + ", n=" + std::to_string(n));
    if (k < 0) throw DomainError("n_coefficient: k must be >= 0");
    return neg_one_pow(k * (t - i)) * binomial(n - i, n - t);
}

// Euler characteristic of the stabilization of an EIDS of type (n+k, n, t):
//   chi = (-1)^{d(t)-d(1)} n_{1t} chi(_1X~)
//       + sum_{i=2}^t n_{it} ( (-1)^{d(t)} m_{d(i)}(_iX) + (-1)^{d(t)-d(i)} Eu_0(_iX) ).
// Requires q >= n(n+k); requires chi_stab for stratum 1 and (m_top, eu0) for
// every stratum 2..t.
inline Integer chi_stabilization(const EidsProblem& p) {
    p.validate();
    require_stabilization_hypothesis(p.q, p.n, p.k);

    const auto invariant = [&](long long i) -> const StratumInvariants& {
        static const StratumInvariants kEmpty{};
        auto it = p.strata.find(i);
        return it == p.strata.end() ? kEmpty : it->second;
    };

    const StratumInvariants& first = invariant(1);
    if (!first.chi_stab) throw MissingInvariantError(1, "chi_stab");

    const long long dt = p.d(p.t);
    Integer total = neg_one_pow(dt - p.d(1)) * n_coefficient(1, p.t, p.n, p.k) * *first.chi_stab;
    for (long long i = 2; i <= p.t; ++i) {
        const StratumInvariants& inv = invariant(i);
        if (!inv.m_top) throw MissingInvariantError(i, "m_top");
        if (!inv.eu0) throw MissingInvariantError(i, "eu0");
        total += n_coefficient(i, p.t, p.n, p.k) *
                 (neg_one_pow(dt) * *inv.m_top + neg_one_pow(dt - p.d(i)) * *inv.eu0);
    }
    return total;
}

// Good-approximation form: every stratum above the ICIS contributes through
// the generic variety, with Eu_0(Sigma^i) = C(n, i-1) and vanishing m-terms:
//   chi = (-1)^{d(t)-d(1)} n_{1t} chi1 + sum_{i=2}^t (-1)^{d(t)-d(i)} n_{it} C(n, i-1).
inline Integer chi_stabilization_good_approx(long long q, long long n, long long k,
                                             long long t, const Integer& chi1) {
    StrataSpec{n, k, t}.validate();
    if (q < 1) throw DomainError("chi_stabilization_good_approx: q must be >= 1");
    require_stabilization_hypothesis(q, n, k);

    EidsProblem p{q, n, k, t, {}};
    const long long dt = p.d(t);
    Integer total = neg_one_pow(dt - p.d(1)) * n_coefficient(1, t, n, k) * chi1;
    for (long long i = 2; i <= t; ++i)
        total += neg_one_pow(dt - p.d(i)) * n_coefficient(i, t, n, k) * binomial(n, i - 1);
    return total;
}

// chi of the stabilization of the ICIS stratum _1X from its Milnor number:
// the stabilization fiber is a bouquet of mu spheres of dimension
// d(1) = q - n(n+k), so chi = 1 + (-1)^{d(1)} mu.
inline Integer icis_chi_from_mu(long long q, long long n, long long k, const Integer& mu) {
    if (n < 1 || k < 0 || q < 1) throw DomainError("icis_chi_from_mu: bad (q, n, k)");
    require_stabilization_hypothesis(q, n, k);
    return 1 + neg_one_pow(q - n * (n + k)) * mu;
}

// ---------------------------------------------------------------------------
// The triangular system tying chi of the strata and their hyperplane slices
// to the polar multiplicities m_{d_i}(_iX). Stored exactly as printed: row r
// holds the equation for t = s - r + 1, i.e. entries n_{i, s-r+1} followed by
// zeros, so the unit coefficients n_{ii} sit on the anti-diagonal. The right
// hand side is kept in natural stratum order (rhs[0] = b_1).
// ---------------------------------------------------------------------------

struct TriangularSystem {
    long long size = 0;
    std::vector<std::vector<Integer>> matrix;
    std::vector<Integer> rhs;
};

namespace detail {
inline void require_well_formed(const TriangularSystem& sys) {
    const long long s = sys.size;
    if (s < 1) throw DomainError("TriangularSystem: size must be >= 1");
    if (static_cast<long long>(sys.matrix.size()) != s ||
        static_cast<long long>(sys.rhs.size()) != s)
        throw DomainError("TriangularSystem: matrix/rhs extents do not match size");
    for (long long r = 1; r <= s; ++r) {
        const auto& row = sys.matrix[static_cast<std::size_t>(r - 1)];
        if (static_cast<long long>(row.size()) != s)
            throw DomainError("TriangularSystem: row " + std::to_string(r) + " is not length " +
                              std::to_string(s));
        const long long t = s - r + 1;
        if (row[static_cast<std::size_t>(t - 1)] != 1)
            throw DomainError("TriangularSystem: anti-diagonal entry in row " +
                              std::to_string(r) + " must be 1");
        for (long long c = t + 1; c <= s; ++c)
            if (row[static_cast<std::size_t>(c - 1)] != 0)
                throw DomainError("TriangularSystem: entry (" + std::to_string(r) + ", " +
                                  std::to_string(c) + ") must be 0");
    }
}
}  // namespace detail

// System for the generic varieties Sigma^1, ..., Sigma^s themselves:
// chi(Sigma^i) = 1 (cones) and chi(Sigma^i cap H) = 1 + (-1)^i C(n-1, i-1),
// with the slice of Sigma^1 = {0} empty. Solving it recovers
// m_0(Sigma^1) = 1 and vanishing top polar multiplicities above.
inline TriangularSystem build_generic_system(long long n, long long k, long long s) {
    StrataSpec{n, k, s}.validate();
    TriangularSystem sys;
    sys.size = s;
    sys.matrix.assign(static_cast<std::size_t>(s),
                      std::vector<Integer>(static_cast<std::size_t>(s), 0));
    for (long long r = 1; r <= s; ++r) {
        const long long t = s - r + 1;
        for (long long i = 1; i <= t; ++i)
            sys.matrix[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(i - 1)] =
                n_coefficient(i, t, n, k);
    }
    sys.rhs.reserve(static_cast<std::size_t>(s));
    for (long long i = 1; i <= s; ++i) {
        const long long dim_i = stratum_dim(n, k, i);
        const Integer chi = 1;
        const Integer chi_h = (i == 1) ? Integer(0) : 1 + neg_one_pow(i) * binomial(n - 1, i - 1);
        sys.rhs.push_back(neg_one_pow(dim_i) * chi + neg_one_pow(dim_i - 1) * chi_h);
    }
    return sys;
}

// Forward substitution as printed: x_1 = b_1, x_i = b_i - sum_{j<i} n_{ji} x_j.
// The coefficients n_{ji} of the equation for stratum i live in matrix row
// s - i + 1.
inline std::vector<Integer> solve_polar_multiplicities(const TriangularSystem& sys) {
    detail::require_well_formed(sys);
    const long long s = sys.size;
    std::vector<Integer> x(static_cast<std::size_t>(s));
    for (long long i = 1; i <= s; ++i) {
        Integer acc = sys.rhs[static_cast<std::size_t>(i - 1)];
        const auto& row = sys.matrix[static_cast<std::size_t>(s - i)];
        for (long long j = 1; j < i; ++j) acc -= row[static_cast<std::size_t>(j - 1)] * x[static_cast<std::size_t>(j - 1)];
        x[static_cast<std::size_t>(i - 1)] = acc;
    }
    return x;
}

// Exact integer determinant (Bareiss fraction-free elimination).
inline Integer determinant(const std::vector<std::vector<Integer>>& m) {
    const std::size_t n = m.size();
    if (n == 0) throw DomainError("determinant: empty matrix");
    for (const auto& row : m)
        if (row.size() != n) throw DomainError("determinant: matrix is not square");
    std::vector<std::vector<Integer>> a = m;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t c = 0; c + 1 < n; ++c) {
        if (a[c][c] == 0) {
            std::size_t pivot = c + 1;
            while (pivot < n && a[pivot][c] == 0) ++pivot;
            if (pivot == n) return 0;
            std::swap(a[c], a[pivot]);
            sign = -sign;
        }
        for (std::size_t r = c + 1; r < n; ++r) {
            for (std::size_t j = c + 1; j < n; ++j) {
                a[r][j] = (a[r][j] * a[c][c] - a[r][c] * a[c][j]) / prev;  // exact division
            }
            a[r][c] = 0;
        }
        prev = a[c][c];
    }
    return sign * a[n - 1][n - 1];
}

inline std::vector<Integer> apply_matrix(const std::vector<std::vector<Integer>>& m,
                                         std::span<const Integer> x) {
    std::vector<Integer> out;
    out.reserve(m.size());
    for (const auto& row : m) {
        if (row.size() != x.size()) throw DomainError("apply_matrix: size mismatch");
        Integer acc = 0;
        for (std::size_t j = 0; j < row.size(); ++j) acc += row[j] * x[j];
        out.push_back(std::move(acc));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Euler obstruction of a section X = F^{-1}(Sigma^s), both q-regimes. The
// slice characteristics chi_bar_*(i, n) of the strata _iX are analytic data
// supplied by the caller (entry for i = 2 first).
// ---------------------------------------------------------------------------

enum class SectionRegime { low_q, high_q };

// Strict on both sides; q = n(n+k) is covered by neither formula.
inline SectionRegime section_regime(long long q, long long n, long long k) {
    if (q < 1 || n < 1 || k < 0) throw DomainError("section_regime: bad (q, n, k)");
    const long long ambient = n * (n + k);
    if (q < ambient) return SectionRegime::low_q;
    if (q > ambient) return SectionRegime::high_q;
    throw HypothesisError("q = n(n+k) = " + std::to_string(ambient) +
                          " is covered by neither section formula");
}

// n(n+k) > q:  Eu_0(X) = e(s-1, n-1) + sum_{i=2}^{s} chi_bar_*(i, n) C(n-i, s-i).
inline Integer eu_section_low_q(long long s, long long n,
                                std::span<const Integer> chi_bar_star) {
    if (!(2 <= s && s <= n))
        throw DomainError("eu_section_low_q: need 2 <= s <= n, got s=" + std::to_string(s) +
                          ", n=" + std::to_string(n));
    if (static_cast<long long>(chi_bar_star.size()) != s - 1)
        throw DomainError("eu_section_low_q: need s-1 = " + std::to_string(s - 1) +
                          " slice values, got " + std::to_string(chi_bar_star.size()));
    Integer total = eu_closed(s - 1, n - 1);
    for (long long i = 2; i <= s; ++i)
        total += chi_bar_star[static_cast<std::size_t>(i - 2)] * binomial(n - i, s - i);
    return total;
}

// q > n(n+k):  Eu_0(X) = C(n, s-1) + chi_bar(_1X cap H) C(n-1, s-1)
//                        + sum_{i=2}^{s} chi_bar_*(i, n) C(n-1, s-1).
// The weight C(n-1, s-1) is applied uniformly, exactly as printed.
inline Integer eu_section_high_q(long long s, long long n, const Integer& chi_bar_1h,
                                 std::span<const Integer> chi_bar_star) {
    detail::require_s_range(n, s, "eu_section_high_q");
    if (static_cast<long long>(chi_bar_star.size()) != s - 1)
        throw DomainError("eu_section_high_q: need s-1 = " + std::to_string(s - 1) +
                          " slice values, got " + std::to_string(chi_bar_star.size()));
    const Integer weight = binomial(n - 1, s - 1);
    Integer total = binomial(n, s - 1) + chi_bar_1h * weight;
    for (const Integer& v : chi_bar_star) total += v * weight;
    return total;
}

// ---------------------------------------------------------------------------
// Euler obstruction of a module and the pair-multiplicity aggregation.
// ---------------------------------------------------------------------------

// Eu_0(M) = sum_{i=0}^{d-1} (-1)^i m_0(P_i(M)). Empty input means a
// zero-dimensional module locus; the sum is 0.
inline Integer eu_of_module(std::span<const Integer> polar_mults) {
    return alternating_sum(polar_mults, 1);
}

// Eu_0(X) = sum_{i=0}^{d-1} (-1)^i e(M_i, N_i) + Eu_0(F^*(JM(Sigma^r))).
// The construction sets M_0, N_0 = 0, so the leading pair multiplicity must
// be zero.
inline Integer eu_via_pair_multiplicities(std::span<const Integer> pair_mults,
                                          const Integer& eu_pullback) {
    if (pair_mults.empty())
        throw DomainError("eu_via_pair_multiplicities: need at least the i=0 entry");
    if (pair_mults[0] != 0)
        throw DomainError("eu_via_pair_multiplicities: pair multiplicity at i=0 must be 0 "
                          "(M_0, N_0 = 0), got " + pair_mults[0].str());
    return alternating_sum(pair_mults, 1) + eu_pullback;
}

// chi of an ICIS stabilization from its polar multiplicities:
// m_0 - m_1 + ... + (-1)^d m_d.
inline Integer icis_chi_from_polar(std::span<const Integer> m) {
    return alternating_sum(m, 1);
}

// ---------------------------------------------------------------------------
// The q-window in which a good approximation of Sigma-bar_r (kernel rank r,
// equal to Sigma^{r+1} in rank-bound indexing) has the same Euler
// obstruction as the generic variety: dim Sigma-bar_r < q < n(n+k).
// ---------------------------------------------------------------------------

struct QWindow {
    long long n = 0;
    long long k = 0;
    long long r = 0;              // kernel rank index
    long long stratum_rank = 0;   // r + 1, the rank-bound index of the same stratum
    long long lower_dim = 0;      // dim Sigma-bar_r, exclusive lower bound
    long long upper = 0;          // n(n+k), exclusive upper bound

    bool empty() const { return lower_dim + 1 > upper - 1; }

    std::vector<long long> admissible_q() const {
        std::vector<long long> qs;
        for (long long q = lower_dim + 1; q <= upper - 1; ++q) qs.push_back(q);
        return qs;
    }
};

inline QWindow good_approx_q_window(long long n, long long k, long long r) {
    if (r < 0) throw DomainError("good_approx_q_window: r must be >= 0");
    if (r + 1 > n)
        throw DomainError("good_approx_q_window: kernel rank r=" + std::to_string(r) +
                          " needs r+1 <= n=" + std::to_string(n));
    QWindow w;
    w.n = n;
    w.k = k;
    w.r = r;
    w.stratum_rank = r + 1;
    w.lower_dim = stratum_dim(n, k, r + 1);
    w.upper = n * (n + k);
    return w;
}

}  // namespace detvar
