#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "detvar/csm.hpp"
#include "detvar/eids.hpp"
#include "detvar/euler.hpp"
#include "detvar/identities.hpp"

namespace detvar {

struct Counterexample {
    std::string params;
    std::string detail;
};

struct SuiteResult {
    std::string suite;
    long long cases = 0;
    std::vector<Counterexample> failures;

    bool passed() const { return failures.empty(); }
};

struct SweepOptions {
    long long n_max = 20;
    long long k_max = 3;
    long long s_max = 0;  // 0 means "up to n"
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"lemma2", "v-property", "eu", "csm",
                                                   "solver"};
    return names;
}

namespace detail {

inline long long effective_s_max(const SweepOptions& opt, long long n) {
    return opt.s_max > 0 ? std::min(opt.s_max, n) : n;
}

inline SuiteResult sweep_lemma2(const SweepOptions& opt) {
    SuiteResult res{"lemma2", 0, {}};
    for (long long n = 2; n <= opt.n_max; ++n)
        for (long long s = 2; s <= effective_s_max(opt, n); ++s) {
            ++res.cases;
            const Lemma2Report rep = check_lemma2(n, s);
            if (!rep.statement_holds)
                res.failures.push_back({"n=" + std::to_string(n) + ", s=" + std::to_string(s),
                                        "lhs=" + rep.lhs.str() +
                                            " rhs=" + rep.rhs_statement.str()});
        }
    return res;
}

inline SuiteResult sweep_v_property(const SweepOptions& opt) {
    SuiteResult res{"v-property", 0, {}};
    for (long long n = 1; n <= opt.n_max; ++n)
        for (long long s = 1; s <= effective_s_max(opt, n); ++s) {
            ++res.cases;
            const Integer sum = v_property_sum(n, s);
            if (sum != 1)
                res.failures.push_back({"n=" + std::to_string(n) + ", s=" + std::to_string(s),
                                        "sum=" + sum.str()});
        }
    return res;
}

inline SuiteResult sweep_eu(const SweepOptions& opt) {
    SuiteResult res{"eu", 0, {}};
    for (long long n = 1; n <= opt.n_max; ++n)
        for (long long s = 1; s <= effective_s_max(opt, n); ++s) {
            ++res.cases;
            const Integer rec = eu_recurrence(s, n);
            const Integer closed = eu_closed(s, n);
            if (rec != closed)
                res.failures.push_back({"s=" + std::to_string(s) + ", n=" + std::to_string(n),
                                        "recurrence=" + rec.str() + " closed=" + closed.str()});
        }
    return res;
}

inline SuiteResult sweep_csm(const SweepOptions& opt) {
    SuiteResult res{"csm", 0, {}};
    for (long long n = 1; n <= opt.n_max; ++n)
        for (long long s = 1; s <= effective_s_max(opt, n); ++s) {
            const CsmCycle cycle = csm_cycle(s, n);
            for (long long j = 1; j <= s; ++j) {
                ++res.cases;
                const Integer value = evaluate_cycle_at_stratum(cycle, j);
                if (value != 1)
                    res.failures.push_back(
                        {"s=" + std::to_string(s) + ", n=" + std::to_string(n) +
                             ", j=" + std::to_string(j),
                         "Eu=" + value.str()});
            }
        }
    return res;
}

inline SuiteResult sweep_solver(const SweepOptions& opt) {
    SuiteResult res{"solver", 0, {}};
    std::mt19937_64 rng(0x5eed5eedULL);
    std::uniform_int_distribution<long long> dist(-1000000, 1000000);
    const long long n_max = std::min<long long>(opt.n_max, 12);
    for (long long n = 1; n <= n_max; ++n)
        for (long long k = 0; k <= opt.k_max; ++k)
            for (long long s = 1; s <= effective_s_max(opt, n); ++s) {
                ++res.cases;
                const TriangularSystem sys = build_generic_system(n, k, s);
                const std::vector<Integer> x = solve_polar_multiplicities(sys);
                bool generic_ok = x[0] == 1;
                for (std::size_t i = 1; i < x.size(); ++i) generic_ok &= x[i] == 0;
                if (!generic_ok) {
                    std::string sol;
                    for (const auto& v : x) sol += (sol.empty() ? "" : ",") + v.str();
                    res.failures.push_back({"n=" + std::to_string(n) + ", k=" +
                                                std::to_string(k) + ", s=" + std::to_string(s),
                                            "solution=(" + sol + ")"});
                }
                // round trip on a random right-hand side
                TriangularSystem random_sys = sys;
                for (auto& b : random_sys.rhs) b = dist(rng);
                const std::vector<Integer> y = solve_polar_multiplicities(random_sys);
                std::vector<Integer> lhs(static_cast<std::size_t>(s));
                for (long long i = 1; i <= s; ++i) {
                    const auto& row = random_sys.matrix[static_cast<std::size_t>(s - i)];
                    Integer acc = 0;
                    for (long long j = 1; j <= s; ++j)
                        acc += row[static_cast<std::size_t>(j - 1)] *
                               y[static_cast<std::size_t>(j - 1)];
                    lhs[static_cast<std::size_t>(i - 1)] = acc;
                }
                if (lhs != random_sys.rhs)
                    res.failures.push_back({"n=" + std::to_string(n) + ", k=" +
                                                std::to_string(k) + ", s=" + std::to_string(s),
                                            "A*x != b on random b"});
            }
    return res;
}

}  // namespace detail

inline SuiteResult run_suite(const std::string& name, const SweepOptions& opt) {
    if (name == "lemma2") return detail::sweep_lemma2(opt);
    if (name == "v-property") return detail::sweep_v_property(opt);
    if (name == "eu") return detail::sweep_eu(opt);
    if (name == "csm") return detail::sweep_csm(opt);
    if (name == "solver") return detail::sweep_solver(opt);
    throw DomainError("unknown verification suite '" + name + "'");
}

// Runs the named suite, or all of them for "all". Aggregation is a plain
// conjunction over independent cases, so the result does not depend on
// evaluation order; rows come back in the fixed suite order.
inline std::vector<SuiteResult> run_suites(const std::string& name, const SweepOptions& opt) {
    std::vector<SuiteResult> out;
    if (name == "all") {
        for (const auto& s : suite_names()) out.push_back(run_suite(s, opt));
    } else {
        out.push_back(run_suite(name, opt));
    }
    return out;
}

}  // namespace detvar
