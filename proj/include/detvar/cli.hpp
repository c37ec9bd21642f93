#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "detvar/csm.hpp"
#include "detvar/eids.hpp"
#include "detvar/euler.hpp"
#include "detvar/identities.hpp"
#include "detvar/json_io.hpp"
#include "detvar/problem_document.hpp"
#include "detvar/strata.hpp"
#include "detvar/verify.hpp"

namespace detvar::cli {

enum class Format { text, csv, json };

// One report, three renderings. The JSON payload is built with stable key
// order and no timestamps, so identical inputs give identical bytes.
struct Report {
    Json json;
    std::string text;
    std::string csv;

    std::string render(Format format) const {
        switch (format) {
            case Format::json: return json.dump(2) + "\n";
            case Format::csv: return csv;
            case Format::text: return text;
        }
        return {};
    }
};

namespace detail {

inline std::string csv_escape_free(const Integer& v) { return v.str(); }

inline std::vector<Integer> parse_integer_list(const std::string& raw, const std::string& where) {
    std::vector<Integer> out;
    if (raw.empty()) return out;
    std::stringstream ss(raw);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (!is_decimal_string(token))
            throw SchemaError(where + ": '" + token + "' is not a decimal integer");
        out.emplace_back(token);
    }
    return out;
}

inline Json integer_list_to_json(std::span<const Integer> values) {
    Json arr = Json::array();
    for (const Integer& v : values) arr.push_back(integer_to_json(v));
    return arr;
}

inline std::string join_integers(std::span<const Integer> values, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += sep;
        out += values[i].str();
    }
    return out;
}

inline TriangularSystem parse_system_json(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
    reject_unknown_fields(doc, {"size", "matrix", "rhs"}, "system document");
    TriangularSystem sys;
    sys.size = small_int_from_json(require_field(doc, "size", "system document"), "size");
    const Json& matrix = require_field(doc, "matrix", "system document");
    const Json& rhs = require_field(doc, "rhs", "system document");
    if (!matrix.is_array()) throw SchemaError("matrix: expected an array of rows");
    if (!rhs.is_array()) throw SchemaError("rhs: expected an array");
    for (const Json& row : matrix) {
        if (!row.is_array()) throw SchemaError("matrix: expected an array of rows");
        std::vector<Integer> out_row;
        for (const Json& v : row) out_row.push_back(integer_from_json(v, "matrix entry"));
        sys.matrix.push_back(std::move(out_row));
    }
    for (const Json& v : rhs) sys.rhs.push_back(integer_from_json(v, "rhs entry"));
    return sys;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SchemaError("cannot read input file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace detail

// --------------------------------------------------------------------------
// Subcommand handlers. Each returns a Report; sweeps also yield an exit code.
// --------------------------------------------------------------------------

inline Report report_eu(long long s, long long n) {
    const Integer closed = eu_closed(s, n);
    const Integer rec = eu_recurrence(s, n);
    Report r;
    r.json["s"] = s;
    r.json["n"] = n;
    r.json["eu"] = integer_to_json(closed);
    r.json["routes"]["recurrence"] = integer_to_json(rec);
    r.json["routes"]["closed"] = integer_to_json(closed);
    r.json["formula"] = "local-euler-obstruction";
    r.text = "Eu_0(Σ^" + std::to_string(s) + ") in Hom(C^" + std::to_string(n) + ", C^" +
             std::to_string(n) + "+k) = " + closed.str() + " (recurrence " + rec.str() +
             ", closed form " + closed.str() + ")\n";
    r.csv = "s,n,recurrence,closed\n" + std::to_string(s) + "," + std::to_string(n) + "," +
            rec.str() + "," + closed.str() + "\n";
    return r;
}

inline Report report_eu_constructible(long long s, long long n) {
    const ConstructibleFunction f = eu_constructible(s, n);
    Report r;
    r.json["s"] = s;
    r.json["n"] = n;
    Json coeffs = Json::array();
    for (long long i = 1; i <= s; ++i) {
        Json entry;
        entry["stratum"] = i;
        entry["value"] = integer_to_json(f.on_stratum(i));
        coeffs.push_back(std::move(entry));
    }
    r.json["coefficients"] = std::move(coeffs);
    r.json["formula"] = "euler-obstruction-constructible-function";
    r.text = "Eu_p(Σ^" + std::to_string(s) + "), constant on each stratum:\n";
    for (long long i = 1; i <= s; ++i)
        r.text += "  Σ^" + std::to_string(i) + " \\ Σ^" + std::to_string(i - 1) + ": " +
                  f.on_stratum(i).str() + "\n";
    r.csv = "stratum,coefficient\n";
    for (long long i = 1; i <= s; ++i)
        r.csv += std::to_string(i) + "," + f.on_stratum(i).str() + "\n";
    return r;
}

inline Report report_csm(long long s, long long n) {
    const CsmCycle cycle = csm_cycle(s, n);
    Report r;
    r.json["s"] = s;
    r.json["n"] = n;
    r.json["basis"] = "Chern-Mather";
    Json coeffs = Json::array();
    for (long long i = 0; i <= s - 1; ++i) {
        Json entry;
        entry["cycle"] = i + 1;
        entry["coefficient"] = integer_to_json(cycle.coeffs[static_cast<std::size_t>(i)]);
        coeffs.push_back(std::move(entry));
    }
    r.json["coefficients"] = std::move(coeffs);
    r.json["formula"] = "csm-cycle";
    std::string terms;
    for (long long i = 0; i <= s - 1; ++i) {
        if (i) terms += " + ";
        terms += cycle.coeffs[static_cast<std::size_t>(i)].str() + "·[Σ^" +
                 std::to_string(i + 1) + "]";
    }
    r.text = "[csm] = " + terms + "\n";
    r.csv = "cycle,coefficient\n";
    for (long long i = 0; i <= s - 1; ++i)
        r.csv += std::to_string(i + 1) + "," + cycle.coeffs[static_cast<std::size_t>(i)].str() +
                 "\n";
    return r;
}

inline Report report_polar_class(long long s, long long n, long long k, long long i) {
    const PolarClassCoefficient c = polar_class_coefficient({n, k, s}, i);
    Report r;
    r.json["s"] = s;
    r.json["n"] = n;
    r.json["k"] = k;
    r.json["i"] = i;
    r.json["sign"] = c.sign;
    r.json["magnitude"] = integer_to_json(c.magnitude);
    r.json["parity_exponent"] = c.parity_exponent;
    r.json["csm_coefficient_magnitude"] = integer_to_json(c.csm_magnitude);
    r.json["formula"] = "polar-class-coefficient";
    r.json["flags"] = Json::array({"polar magnitude C(n-i+1, s-i-1) and csm magnitude "
                                   "C(n-i-1, s-i-1) differ in their top argument; both shown"});
    r.text = "[P_{d-d_" + std::to_string(i + 1) + "}(Σ^" + std::to_string(s) +
             ")] coefficient on c_CM(Σ^" + std::to_string(i + 1) + "): sign " +
             (c.sign > 0 ? "+1" : "-1") + " (parity exponent " +
             std::to_string(c.parity_exponent) + "), magnitude " + c.magnitude.str() +
             "; csm coefficient magnitude " + c.csm_magnitude.str() + "\n";
    r.csv = "s,n,k,i,sign,magnitude,parity_exponent,csm_magnitude\n" + std::to_string(s) + "," +
            std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(i) + "," +
            std::to_string(c.sign) + "," + c.magnitude.str() + "," +
            std::to_string(c.parity_exponent) + "," + c.csm_magnitude.str() + "\n";
    return r;
}

inline Report report_chi_stab(const ProblemDocument& doc) {
    const EidsProblem& p = doc.problem;
    const Integer chi = chi_stabilization(p);
    Report r;
    r.json["q"] = p.q;
    r.json["n"] = p.n;
    r.json["k"] = p.k;
    r.json["t"] = p.t;
    Json strata = Json::array();
    bool nonzero_m = false;
    for (const auto& [i, inv] : p.strata) {
        Json entry;
        entry["i"] = i;
        if (inv.chi_stab) entry["chi_stab"] = integer_to_json(*inv.chi_stab);
        if (inv.m_top) {
            entry["m_top"] = integer_to_json(*inv.m_top);
            if (*inv.m_top != 0) nonzero_m = true;
        }
        if (inv.eu0) entry["eu0"] = integer_to_json(*inv.eu0);
        entry["source"] = "user";
        strata.push_back(std::move(entry));
    }
    r.json["strata"] = std::move(strata);
    r.json["chi"] = integer_to_json(chi);
    r.json["formula"] = "stabilization-euler-characteristic";
    Json flags = Json::array();
    if (nonzero_m)
        flags.push_back("nonzero m-terms weighted by (-1)^{d(t)}; no reduced special case "
                        "exercises this sign independently");
    r.json["flags"] = std::move(flags);
    r.text = "χ of the stabilization: " + chi.str() + " (q=" + std::to_string(p.q) +
             ", n=" + std::to_string(p.n) + ", k=" + std::to_string(p.k) +
             ", t=" + std::to_string(p.t) + ")\n";
    for (const auto& [i, inv] : p.strata) {
        r.text += "  stratum " + std::to_string(i) + " [user]:";
        if (inv.chi_stab) r.text += " chi_stab=" + inv.chi_stab->str();
        if (inv.m_top) r.text += " m_top=" + inv.m_top->str();
        if (inv.eu0) r.text += " eu0=" + inv.eu0->str();
        r.text += "\n";
    }
    if (nonzero_m)
        r.text += "  note: nonzero m-terms weighted by (-1)^{d(t)}; no reduced special case "
                  "exercises this sign independently\n";
    r.csv = "q,n,k,t,chi\n" + std::to_string(p.q) + "," + std::to_string(p.n) + "," +
            std::to_string(p.k) + "," + std::to_string(p.t) + "," + chi.str() + "\n";
    return r;
}

inline Report report_chi_stab_good(long long q, long long n, long long k, long long t,
                                   const std::optional<Integer>& chi1_arg,
                                   const std::optional<Integer>& mu_arg) {
    if (chi1_arg.has_value() == mu_arg.has_value())
        throw SchemaError("chi-stab-good: supply exactly one of --chi1 and --mu");
    const Integer chi1 = chi1_arg ? *chi1_arg : icis_chi_from_mu(q, n, k, *mu_arg);
    const Integer chi = chi_stabilization_good_approx(q, n, k, t, chi1);
    Report r;
    r.json["q"] = q;
    r.json["n"] = n;
    r.json["k"] = k;
    r.json["t"] = t;
    r.json["chi1"] = integer_to_json(chi1);
    r.json["chi1_source"] = chi1_arg ? "user" : "derived-from-mu";
    if (mu_arg) r.json["mu"] = integer_to_json(*mu_arg);
    r.json["chi"] = integer_to_json(chi);
    r.json["chi_bar"] = integer_to_json(chi - 1);
    r.json["formula"] = "stabilization-euler-characteristic-good-approximation";
    r.text = "χ of the stabilization (good approximation): " + chi.str() +
             "  (χ̄ = " + (chi - 1).str() + ", chi1 = " + chi1.str() +
             (mu_arg ? " derived from μ = " + mu_arg->str() : "") + ")\n";
    r.csv = "q,n,k,t,chi1,chi,chi_bar\n" + std::to_string(q) + "," + std::to_string(n) + "," +
            std::to_string(k) + "," + std::to_string(t) + "," + chi1.str() + "," + chi.str() +
            "," + (chi - 1).str() + "\n";
    return r;
}

inline Json system_to_json(const TriangularSystem& sys) {
    Json out;
    out["size"] = sys.size;
    Json matrix = Json::array();
    for (const auto& row : sys.matrix) matrix.push_back(detail::integer_list_to_json(row));
    out["matrix"] = std::move(matrix);
    out["rhs"] = detail::integer_list_to_json(sys.rhs);
    return out;
}

inline Report report_generic_system(long long n, long long k, long long s) {
    const TriangularSystem sys = build_generic_system(n, k, s);
    const Integer det = determinant(sys.matrix);
    Report r;
    r.json["n"] = n;
    r.json["k"] = k;
    r.json["s"] = s;
    Json sys_json = system_to_json(sys);
    r.json["matrix"] = std::move(sys_json["matrix"]);
    r.json["rhs"] = std::move(sys_json["rhs"]);
    r.json["determinant"] = integer_to_json(det);
    r.json["formula"] = "generic-polar-multiplicity-system";
    r.text = "A (rows are the equations for t = s..1):\n";
    for (const auto& row : sys.matrix) r.text += "  [" + detail::join_integers(row, " ") + "]\n";
    r.text += "b (stratum order 1..s) = (" + detail::join_integers(sys.rhs, ", ") + ")\n";
    r.text += "det A = " + det.str() + "\n";
    // augmented rows: matrix row for equation t followed by b_t
    for (long long row = 1; row <= s; ++row) {
        const long long t = s - row + 1;
        r.csv += detail::join_integers(sys.matrix[static_cast<std::size_t>(row - 1)], ",") +
                 "," + sys.rhs[static_cast<std::size_t>(t - 1)].str() + "\n";
    }
    return r;
}

inline Report report_solve_system(const TriangularSystem& sys) {
    const std::vector<Integer> x = solve_polar_multiplicities(sys);
    Report r;
    r.json = system_to_json(sys);
    r.json["solution"] = detail::integer_list_to_json(x);
    r.json["formula"] = "forward-substitution";
    r.text = "x = (" + detail::join_integers(x, ", ") + ")\n";
    r.csv = "i,x\n";
    for (std::size_t i = 0; i < x.size(); ++i)
        r.csv += std::to_string(i + 1) + "," + x[i].str() + "\n";
    return r;
}

inline Report report_eu_section(long long q, long long n, long long k, long long s,
                                const std::vector<Integer>& chi_bar_star,
                                const std::optional<Integer>& chi_bar_1h) {
    const SectionRegime regime = section_regime(q, n, k);
    Report r;
    Integer eu;
    if (regime == SectionRegime::low_q) {
        if (chi_bar_1h)
            throw DomainError("eu-section: --chi-bar-1h only applies when q > n(n+k)");
        eu = eu_section_low_q(s, n, chi_bar_star);
    } else {
        if (!chi_bar_1h)
            throw DomainError("eu-section: --chi-bar-1h is required when q > n(n+k)");
        eu = eu_section_high_q(s, n, *chi_bar_1h, chi_bar_star);
    }
    const bool low = regime == SectionRegime::low_q;
    r.json["q"] = q;
    r.json["n"] = n;
    r.json["k"] = k;
    r.json["s"] = s;
    r.json["regime"] = low ? "low-q" : "high-q";
    r.json["chi_bar_star"] = detail::integer_list_to_json(chi_bar_star);
    if (chi_bar_1h) r.json["chi_bar_1h"] = integer_to_json(*chi_bar_1h);
    r.json["eu"] = integer_to_json(eu);
    r.json["formula"] = low ? "section-euler-obstruction-low-q"
                            : "section-euler-obstruction-high-q";
    Json flags = Json::array();
    if (!low)
        flags.push_back("uniform weight C(n-1, s-1) applied to the slice terms, as printed");
    r.json["flags"] = std::move(flags);
    r.text = "Eu_0(X) = " + eu.str() + " (" + (low ? "low-q" : "high-q") + " regime, q=" +
             std::to_string(q) + ", n=" + std::to_string(n) + ", k=" + std::to_string(k) +
             ", s=" + std::to_string(s) + ")\n";
    r.csv = "q,n,k,s,regime,eu\n" + std::to_string(q) + "," + std::to_string(n) + "," +
            std::to_string(k) + "," + std::to_string(s) + "," + (low ? "low-q" : "high-q") +
            "," + eu.str() + "\n";
    return r;
}

inline Report report_eu_module(const std::optional<std::vector<Integer>>& polar,
                               const std::optional<std::vector<Integer>>& pair,
                               const std::optional<Integer>& eu_pullback) {
    Report r;
    if (polar.has_value() == pair.has_value())
        throw SchemaError("eu-module: supply exactly one of --polar-mults and --pair-mults");
    if (pair && !eu_pullback)
        throw SchemaError("eu-module: --pair-mults requires --eu-pullback");
    if (polar && eu_pullback)
        throw SchemaError("eu-module: --eu-pullback only applies with --pair-mults");
    Json flags = Json::array();
    Integer eu;
    if (polar) {
        eu = eu_of_module(*polar);
        if (polar->empty())
            flags.push_back("empty polar multiplicity list: zero-dimensional module locus");
        r.json["polar_multiplicities"] = detail::integer_list_to_json(*polar);
        r.json["eu"] = integer_to_json(eu);
        r.json["formula"] = "module-euler-obstruction";
        r.text = "Eu_0(M) = " + eu.str() + "\n";
    } else {
        eu = eu_via_pair_multiplicities(*pair, *eu_pullback);
        r.json["pair_multiplicities"] = detail::integer_list_to_json(*pair);
        r.json["eu_pullback"] = integer_to_json(*eu_pullback);
        r.json["eu"] = integer_to_json(eu);
        r.json["formula"] = "pair-multiplicity-euler-obstruction";
        r.text = "Eu_0(X) = " + eu.str() + "\n";
    }
    r.json["flags"] = flags;
    for (const auto& f : flags) r.text += "  note: " + f.get<std::string>() + "\n";
    r.csv = "eu\n" + eu.str() + "\n";
    return r;
}

inline Report report_q_window(long long n, long long k, long long r_index) {
    const QWindow w = good_approx_q_window(n, k, r_index);
    Report r;
    r.json["n"] = n;
    r.json["k"] = k;
    r.json["r"] = r_index;
    r.json["stratum_rank"] = w.stratum_rank;
    r.json["lower_dim"] = w.lower_dim;
    r.json["upper"] = w.upper;
    Json qs = Json::array();
    for (long long q : w.admissible_q()) qs.push_back(q);
    r.json["admissible_q"] = std::move(qs);
    r.json["empty"] = w.empty();
    r.json["conventions"]["kernel_rank_index"] =
        "r = " + std::to_string(r_index) + " counts kernel rank";
    r.json["conventions"]["rank_bound_index"] =
        "the same stratum has rank-bound index s = " + std::to_string(w.stratum_rank);
    r.json["formula"] = "good-approximation-q-window";
    if (w.empty()) {
        r.text = "no admissible q: window " + std::to_string(w.lower_dim) + " < q < " +
                 std::to_string(w.upper) + " is empty\n";
    } else {
        std::string qs_text;
        for (long long q : w.admissible_q())
            qs_text += (qs_text.empty() ? "" : ", ") + std::to_string(q);
        r.text = "admissible q: " + qs_text + " (window " + std::to_string(w.lower_dim) +
                 " < q < " + std::to_string(w.upper) + "; kernel-rank index r=" +
                 std::to_string(r_index) + " is rank-bound index s=" +
                 std::to_string(w.stratum_rank) + ")\n";
    }
    r.csv = "q\n";
    for (long long q : w.admissible_q()) r.csv += std::to_string(q) + "\n";
    return r;
}

inline Report report_pascal(long long rows) {
    const auto triangle = pascal_triangle_of_spaces(rows);
    Report r;
    r.json["rows"] = rows;
    Json rows_json = Json::array();
    for (const auto& row : triangle) rows_json.push_back(detail::integer_list_to_json(row));
    r.json["triangle"] = std::move(rows_json);
    r.json["formula"] = "pascal-triangle-of-spaces";
    for (const auto& row : triangle) {
        r.text += detail::join_integers(row, " ") + "\n";
        r.csv += detail::join_integers(row, ",") + "\n";
    }
    return r;
}

inline Report report_verify(const std::string& suite, const SweepOptions& opt, int& exit_code) {
    const std::vector<SuiteResult> results = run_suites(suite, opt);
    bool all_passed = true;
    Report r;
    r.json["suite"] = suite;
    r.json["n_max"] = opt.n_max;
    r.json["k_max"] = opt.k_max;
    r.json["s_max"] = opt.s_max;
    Json suites = Json::array();
    r.csv = "suite,cases,failures\n";
    for (const SuiteResult& res : results) {
        all_passed &= res.passed();
        Json entry;
        entry["suite"] = res.suite;
        entry["cases"] = res.cases;
        Json failures = Json::array();
        for (const Counterexample& c : res.failures) {
            Json f;
            f["params"] = c.params;
            f["detail"] = c.detail;
            failures.push_back(std::move(f));
        }
        entry["failures"] = std::move(failures);
        suites.push_back(std::move(entry));
        r.text += "suite " + res.suite + ": " + std::to_string(res.cases) + " cases, " +
                  (res.passed() ? "PASS" : "FAIL (" + std::to_string(res.failures.size()) +
                                               " counterexamples)") +
                  "\n";
        for (const Counterexample& c : res.failures)
            r.text += "  counterexample " + c.params + ": " + c.detail + "\n";
        r.csv += res.suite + "," + std::to_string(res.cases) + "," +
                 std::to_string(res.failures.size()) + "\n";
    }
    r.json["suites"] = std::move(suites);
    r.json["all_passed"] = all_passed;
    r.text += all_passed ? "all identities verified\n" : "counterexamples found\n";
    exit_code = all_passed ? 0 : 3;
    return r;
}

// --------------------------------------------------------------------------
// Argument grammar and dispatch.
// --------------------------------------------------------------------------

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact topological invariants of generic determinantal varieties and their "
                 "essentially isolated sections"};
    app.name("detvar");

    struct Common {
        std::string format = "text";
        std::string out_path;
    };
    auto add_common = [](CLI::App* sub, Common& common) {
        sub->add_option("--format", common.format, "output format")
            ->check(CLI::IsMember({"text", "csv", "json"}));
        sub->add_option("--out", common.out_path, "write the report to this path");
    };

    std::optional<Report> report;
    int exit_code = 0;

    // eu
    auto eu_opts = std::make_shared<std::pair<long long, long long>>();
    Common eu_common;
    {
        CLI::App* sub = app.add_subcommand("eu", "local Euler obstruction of Σ^s");
        sub->add_option("--s", eu_opts->first, "rank bound s")->required();
        sub->add_option("--n", eu_opts->second, "matrix rows n")->required();
        add_common(sub, eu_common);
        sub->callback([&, eu_opts] { report = report_eu(eu_opts->first, eu_opts->second); });
    }

    // eu-constructible
    auto euc_opts = std::make_shared<std::pair<long long, long long>>();
    Common euc_common;
    {
        CLI::App* sub = app.add_subcommand("eu-constructible",
                                           "Euler obstruction as a constructible function");
        sub->add_option("--s", euc_opts->first, "rank bound s")->required();
        sub->add_option("--n", euc_opts->second, "matrix rows n")->required();
        add_common(sub, euc_common);
        sub->callback(
            [&, euc_opts] { report = report_eu_constructible(euc_opts->first, euc_opts->second); });
    }

    // csm
    auto csm_opts = std::make_shared<std::pair<long long, long long>>();
    Common csm_common;
    {
        CLI::App* sub = app.add_subcommand("csm", "CSM cycle of Σ^s");
        sub->add_option("--s", csm_opts->first, "rank bound s")->required();
        sub->add_option("--n", csm_opts->second, "matrix rows n")->required();
        add_common(sub, csm_common);
        sub->callback([&, csm_opts] { report = report_csm(csm_opts->first, csm_opts->second); });
    }

    // polar-class
    struct PolarOpts {
        long long s = 0, n = 0, k = 0, i = 0;
    };
    auto polar_opts = std::make_shared<PolarOpts>();
    Common polar_common;
    {
        CLI::App* sub = app.add_subcommand("polar-class", "polar class coefficient of Σ^s");
        sub->add_option("--s", polar_opts->s, "rank bound s")->required();
        sub->add_option("--n", polar_opts->n, "matrix rows n")->required();
        sub->add_option("--k", polar_opts->k, "column excess k")->required();
        sub->add_option("--i", polar_opts->i, "cycle index i (0-based)")->required();
        add_common(sub, polar_common);
        sub->callback([&, polar_opts] {
            report = report_polar_class(polar_opts->s, polar_opts->n, polar_opts->k,
                                        polar_opts->i);
        });
    }

    // chi-stab
    auto chi_stab_path = std::make_shared<std::string>();
    Common chi_stab_common;
    {
        CLI::App* sub = app.add_subcommand("chi-stab",
                                           "Euler characteristic of an EIDS stabilization");
        sub->add_option("--problem", *chi_stab_path, "problem document (JSON)")->required();
        add_common(sub, chi_stab_common);
        sub->callback([&, chi_stab_path] {
            report = report_chi_stab(parse_problem_document(detail::read_file(*chi_stab_path)));
        });
    }

    // chi-stab-good
    struct ChiGoodOpts {
        long long q = 0, n = 0, k = 0, t = 0;
        std::string chi1, mu;
    };
    auto chi_good_opts = std::make_shared<ChiGoodOpts>();
    Common chi_good_common;
    {
        CLI::App* sub = app.add_subcommand(
            "chi-stab-good", "stabilization Euler characteristic of a good approximation");
        sub->add_option("--q", chi_good_opts->q, "source dimension q")->required();
        sub->add_option("--n", chi_good_opts->n, "matrix rows n")->required();
        sub->add_option("--k", chi_good_opts->k, "column excess k")->required();
        sub->add_option("--t", chi_good_opts->t, "rank bound t")->required();
        sub->add_option("--chi1", chi_good_opts->chi1, "chi of the ICIS stabilization");
        sub->add_option("--mu", chi_good_opts->mu, "Milnor number of the ICIS stratum");
        add_common(sub, chi_good_common);
        sub->callback([&, chi_good_opts] {
            std::optional<Integer> chi1, mu;
            if (!chi_good_opts->chi1.empty()) {
                if (!is_decimal_string(chi_good_opts->chi1))
                    throw SchemaError("--chi1: not a decimal integer");
                chi1 = Integer(chi_good_opts->chi1);
            }
            if (!chi_good_opts->mu.empty()) {
                if (!is_decimal_string(chi_good_opts->mu))
                    throw SchemaError("--mu: not a decimal integer");
                mu = Integer(chi_good_opts->mu);
            }
            report = report_chi_stab_good(chi_good_opts->q, chi_good_opts->n, chi_good_opts->k,
                                          chi_good_opts->t, chi1, mu);
        });
    }

    // generic-system
    struct SystemOpts {
        long long n = 0, k = 0, s = 0;
    };
    auto generic_opts = std::make_shared<SystemOpts>();
    Common generic_common;
    {
        CLI::App* sub = app.add_subcommand("generic-system",
                                           "polar multiplicity system of the generic strata");
        sub->add_option("--n", generic_opts->n, "matrix rows n")->required();
        sub->add_option("--k", generic_opts->k, "column excess k")->required();
        sub->add_option("--s", generic_opts->s, "rank bound s")->required();
        add_common(sub, generic_common);
        sub->callback([&, generic_opts] {
            report = report_generic_system(generic_opts->n, generic_opts->k, generic_opts->s);
        });
    }

    // solve-system
    auto solve_path = std::make_shared<std::string>();
    auto solve_generic = std::make_shared<SystemOpts>();
    auto solve_has_generic = std::make_shared<bool>(false);
    Common solve_common;
    {
        CLI::App* sub = app.add_subcommand("solve-system",
                                           "forward substitution on a triangular system");
        sub->add_option("--system", *solve_path, "system document (JSON)");
        auto* n_opt = sub->add_option("--n", solve_generic->n, "matrix rows n (generic system)");
        auto* k_opt = sub->add_option("--k", solve_generic->k, "column excess k");
        auto* s_opt = sub->add_option("--s", solve_generic->s, "rank bound s");
        add_common(sub, solve_common);
        sub->callback([&, solve_path, solve_generic, solve_has_generic, n_opt, k_opt, s_opt] {
            const bool has_file = !solve_path->empty();
            const bool has_generic = n_opt->count() || k_opt->count() || s_opt->count();
            *solve_has_generic = has_generic;
            if (has_file == has_generic)
                throw SchemaError("solve-system: supply either --system or --n/--k/--s");
            if (has_generic && !(n_opt->count() && k_opt->count() && s_opt->count()))
                throw SchemaError("solve-system: the generic form needs --n, --k and --s");
            const TriangularSystem sys =
                has_file ? detail::parse_system_json(detail::read_file(*solve_path))
                         : build_generic_system(solve_generic->n, solve_generic->k,
                                                solve_generic->s);
            report = report_solve_system(sys);
        });
    }

    // eu-section
    struct SectionOpts {
        long long q = 0, n = 0, k = 0, s = 0;
        std::string chi_bar_star;
        std::string chi_bar_1h;
    };
    auto section_opts = std::make_shared<SectionOpts>();
    Common section_common;
    {
        CLI::App* sub = app.add_subcommand("eu-section",
                                           "Euler obstruction of a determinantal section");
        sub->add_option("--q", section_opts->q, "source dimension q")->required();
        sub->add_option("--n", section_opts->n, "matrix rows n")->required();
        sub->add_option("--k", section_opts->k, "column excess k")->required();
        sub->add_option("--s", section_opts->s, "rank bound s")->required();
        sub->add_option("--chi-bar-star", section_opts->chi_bar_star,
                        "comma-separated slice values for i = 2..s");
        auto* h_opt = sub->add_option("--chi-bar-1h", section_opts->chi_bar_1h,
                                      "reduced chi of _1X cap H (high-q regime)");
        add_common(sub, section_common);
        sub->callback([&, section_opts, h_opt] {
            const std::vector<Integer> star =
                detail::parse_integer_list(section_opts->chi_bar_star, "--chi-bar-star");
            std::optional<Integer> chi_bar_1h;
            if (h_opt->count()) {
                if (!is_decimal_string(section_opts->chi_bar_1h))
                    throw SchemaError("--chi-bar-1h: not a decimal integer");
                chi_bar_1h = Integer(section_opts->chi_bar_1h);
            }
            report = report_eu_section(section_opts->q, section_opts->n, section_opts->k,
                                       section_opts->s, star, chi_bar_1h);
        });
    }

    // eu-module
    struct ModuleOpts {
        std::string polar, pair, pullback;
    };
    auto module_opts = std::make_shared<ModuleOpts>();
    Common module_common;
    {
        CLI::App* sub = app.add_subcommand("eu-module", "Euler obstruction of a module");
        auto* polar_opt = sub->add_option("--polar-mults", module_opts->polar,
                                          "comma-separated m_0(P_i(M)), i = 0..d-1");
        auto* pair_opt = sub->add_option("--pair-mults", module_opts->pair,
                                         "comma-separated pair multiplicities, i = 0..d-1");
        auto* pullback_opt = sub->add_option("--eu-pullback", module_opts->pullback,
                                             "Euler obstruction of the pulled-back module");
        add_common(sub, module_common);
        sub->callback([&, module_opts, polar_opt, pair_opt, pullback_opt] {
            std::optional<std::vector<Integer>> polar, pair;
            std::optional<Integer> pullback;
            if (polar_opt->count())
                polar = detail::parse_integer_list(module_opts->polar, "--polar-mults");
            if (pair_opt->count())
                pair = detail::parse_integer_list(module_opts->pair, "--pair-mults");
            if (pullback_opt->count()) {
                if (!is_decimal_string(module_opts->pullback))
                    throw SchemaError("--eu-pullback: not a decimal integer");
                pullback = Integer(module_opts->pullback);
            }
            report = report_eu_module(polar, pair, pullback);
        });
    }

    // q-window
    struct WindowOpts {
        long long n = 0, k = 0, r = 0;
    };
    auto window_opts = std::make_shared<WindowOpts>();
    Common window_common;
    {
        CLI::App* sub = app.add_subcommand("q-window",
                                           "admissible q for good approximations");
        sub->add_option("--n", window_opts->n, "matrix rows n")->required();
        sub->add_option("--k", window_opts->k, "column excess k")->required();
        sub->add_option("--r", window_opts->r, "kernel rank index r")->required();
        add_common(sub, window_common);
        sub->callback([&, window_opts] {
            report = report_q_window(window_opts->n, window_opts->k, window_opts->r);
        });
    }

    // pascal
    auto pascal_rows = std::make_shared<long long>(0);
    Common pascal_common;
    {
        CLI::App* sub = app.add_subcommand("pascal", "triangle of Euler obstructions");
        sub->add_option("--rows", *pascal_rows, "number of rows beyond row 0")->required();
        add_common(sub, pascal_common);
        sub->callback([&, pascal_rows] { report = report_pascal(*pascal_rows); });
    }

    // verify
    struct VerifyOpts {
        std::string suite = "all";
        SweepOptions sweep;
    };
    auto verify_opts = std::make_shared<VerifyOpts>();
    Common verify_common;
    {
        CLI::App* sub = app.add_subcommand("verify", "identity verification sweeps");
        sub->add_option("--suite", verify_opts->suite, "suite to run")
            ->check(CLI::IsMember({"all", "lemma2", "v-property", "eu", "csm", "solver"}));
        sub->add_option("--n-max", verify_opts->sweep.n_max, "sweep bound on n");
        sub->add_option("--k-max", verify_opts->sweep.k_max, "sweep bound on k");
        sub->add_option("--s-max", verify_opts->sweep.s_max, "sweep bound on s (0: up to n)");
        add_common(sub, verify_common);
        sub->callback([&, verify_opts] {
            report = report_verify(verify_opts->suite, verify_opts->sweep, exit_code);
        });
    }

    app.require_subcommand(1);

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("detvar");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error[E_USAGE]: " << e.what() << "\n";
        return 2;
    } catch (const SchemaError& e) {
        err << "error[" << e.code() << "]: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error[" << e.code() << "]: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error[E_INTERNAL]: " << e.what() << "\n";
        return 1;
    }

    if (!report) return 0;

    const std::map<std::string, const Common*> commons = {
        {"eu", &eu_common},
        {"eu-constructible", &euc_common},
        {"csm", &csm_common},
        {"polar-class", &polar_common},
        {"chi-stab", &chi_stab_common},
        {"chi-stab-good", &chi_good_common},
        {"generic-system", &generic_common},
        {"solve-system", &solve_common},
        {"eu-section", &section_common},
        {"eu-module", &module_common},
        {"q-window", &window_common},
        {"pascal", &pascal_common},
        {"verify", &verify_common},
    };
    Common active;
    if (!app.get_subcommands().empty()) {
        auto it = commons.find(app.get_subcommands().front()->get_name());
        if (it != commons.end()) active = *it->second;
    }

    Format format = Format::text;
    if (active.format == "csv") format = Format::csv;
    else if (active.format == "json") format = Format::json;

    const std::string rendered = report->render(format);
    if (!active.out_path.empty()) {
        std::ofstream file(active.out_path, std::ios::binary);
        if (!file) {
            err << "error[E_SCHEMA]: cannot open '" << active.out_path << "' for writing\n";
            return 2;
        }
        file << rendered;
    } else {
        out << rendered;
    }
    return exit_code;
}

}  // namespace detvar::cli
