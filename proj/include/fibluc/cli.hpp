#pragma once

// Command-line front end: sequence queries, number-theoretic tools, identity
// suites, instance solving, theorem verification, factorial spot check.
// Exit codes: 0 success/match, 1 verification failure, 2 usage, 3 resource
// or internal error.

#include "fibluc/bigseq.hpp"
#include "fibluc/identities.hpp"
#include "fibluc/numthy.hpp"
#include "fibluc/solver.hpp"
#include "fibluc/verifier.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

namespace fibluc::cli {

struct CommandOutcome {
    int exit_code = 0;
    std::string out;  // payload for stdout
    std::string err;  // diagnostics for stderr
};

namespace detail {

using nlohmann::json;

inline Natural parse_natural(const std::string& s) {
    try {
        Natural n(s);
        if (n < 0) throw std::invalid_argument("negative");
        return n;
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("not a non-negative decimal integer: " + s);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("not a non-negative decimal integer: " + s);
    }
}

inline SequenceKind parse_kind(const std::string& s) {
    if (s == "fib") return SequenceKind::fibonacci;
    if (s == "lucas") return SequenceKind::lucas;
    throw std::invalid_argument("kind must be fib or lucas, got: " + s);
}

inline int parse_sign(const std::string& s) {
    if (s == "plus") return +1;
    if (s == "minus") return -1;
    throw std::invalid_argument("sign must be plus or minus, got: " + s);
}

inline std::string join_indices(const std::vector<SeqIndex>& idx) {
    std::string s = "{";
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(idx[i]);
    }
    return s + "}";
}

inline json record_json(const SolutionRecord& r, bool with_m) {
    json j;
    if (with_m) j["m"] = r.instance.m;
    j["indices"] = r.multiset.indices;
    j["product"] = r.product.str();
    j["class"] = r.class_label();
    return j;
}

inline std::string record_line(const SolutionRecord& r) {
    return "m=" + std::to_string(r.instance.m) + ": " + join_indices(r.multiset.indices) +
           " product=" + r.product.str() + " class=" + r.class_label();
}

inline void render_report_human(const TheoremReport& rep, std::ostringstream& os) {
    os << "theorem " << theorem_code(rep.theorem) << "\n";
    os << "bounds: m_max=" << rep.bounds.m_max << " sporadic_m_max=" << rep.bounds.sporadic_m_max
       << "\n";
    for (const auto& r : rep.found) os << record_line(r) << "\n";
    os << "solvable m:";
    for (SeqIndex m : rep.solvable_m()) os << " " << m;
    os << "\n";
    for (const auto& r : rep.missing) os << "missing: " << record_line(r) << "\n";
    for (const auto& r : rep.extra) os << "extra: " << record_line(r) << "\n";
    if (!rep.sieve_cross_check_ok) os << "sieve cross-check: FAILED\n";
    if (rep.sporadic_above_cap) os << "sporadic record above sporadic_m_max\n";
    os << "status: " << (rep.match() ? "MATCH" : "MISMATCH") << "\n";
}

inline json report_json(const TheoremReport& rep) {
    json j;
    j["theorem"] = theorem_code(rep.theorem);
    j["m_max"] = rep.bounds.m_max;
    j["sporadic_m_max"] = rep.bounds.sporadic_m_max;
    j["status"] = rep.match() ? "match" : "mismatch";
    j["solvable_m"] = rep.solvable_m();
    j["found"] = json::array();
    for (const auto& r : rep.found) j["found"].push_back(record_json(r, true));
    j["missing"] = json::array();
    for (const auto& r : rep.missing) j["missing"].push_back(record_json(r, true));
    j["extra"] = json::array();
    for (const auto& r : rep.extra) j["extra"].push_back(record_json(r, true));
    j["sieve_cross_check"] = rep.sieve_cross_check_ok;
    return j;
}

struct IdentitySuiteResult {
    std::uint64_t passed = 0;
    std::uint64_t failed = 0;
};

inline IdentitySuiteResult run_identity_suite(const std::string& suite, SeqIndex max) {
    const auto F = SequenceKind::fibonacci;
    const auto L = SequenceKind::lucas;
    IdentitySuiteResult res;
    auto tally = [&](bool ok) { ok ? ++res.passed : ++res.failed; };
    if (suite == "shift") {
        for (SeqIndex m = -max; m <= max; ++m)
            for (SeqIndex k = -max; k <= max; ++k) tally(shift_identity_check(m, k));
    } else if (suite == "lemma-fib") {
        for (SeqIndex m = 1; m <= max; ++m) {
            for (Offset off : {Offset::minus_one, Offset::plus_one}) {
                const Natural fm = term(F, m);
                tally(factor_fib_square(m, off).value() == BigInt(fm * fm) + offset_value(off));
            }
        }
    } else if (suite == "lemma-lucas") {
        for (SeqIndex m = 1; m <= max; ++m) {
            for (Offset off : {Offset::minus_one, Offset::plus_one}) {
                const Natural lm = term(L, m);
                tally(BigInt(factor_lucas_square(m, off).value()) == BigInt(lm * lm) + offset_value(off));
            }
        }
    } else if (suite == "families") {
        for (SeqIndex m = 3; m <= max; m += 2) {  // F_5 F_{m-1} F_{m+1} + 1 = L_m^2, m odd
            const Natural lm = term(L, m);
            tally(term(F, 5) * term(F, m - 1) * term(F, m + 1) + 1 == lm * lm);
        }
        for (SeqIndex m = 2; m <= max; m += 2) {  // F_5 F_{m-1} F_{m+1} - 1 = L_m^2, m even
            const Natural lm = term(L, m);
            tally(term(F, 5) * term(F, m - 1) * term(F, m + 1) - 1 == lm * lm);
        }
        for (SeqIndex m = 4; m <= max; ++m) {  // F_{m-d} F_{m+d} - 1 = F_m^2
            const int d = parity_offsets(m).delta;
            const Natural fm = term(F, m);
            tally(term(F, m - d) * term(F, m + d) - 1 == fm * fm);
        }
        for (SeqIndex m = 5; m <= max; ++m) {  // F_{m-e} F_{m+e} + 1 = F_m^2
            const int e = parity_offsets(m).epsilon;
            const Natural fm = term(F, m);
            tally(term(F, m - e) * term(F, m + e) + 1 == fm * fm);
        }
    } else {
        throw std::invalid_argument("unknown identity suite: " + suite);
    }
    return res;
}

}  // namespace detail

/// Parse one subcommand from argv (no program name), execute, render.
inline CommandOutcome dispatch(std::vector<std::string> args) {
    using detail::json;
    CommandOutcome res;

    CLI::App app{"exact Fibonacci/Lucas product-square equation toolkit"};
    app.name("fibluc");
    app.require_subcommand(1);

    // seq
    auto* seq_cmd = app.add_subcommand("seq", "print F_n or L_n (negative n allowed)");
    std::string seq_kind;
    SeqIndex seq_n = 0;
    seq_cmd->add_option("--kind", seq_kind, "fib|lucas")->required();
    seq_cmd->add_option("--n", seq_n, "sequence index")->required();

    // zrank / pisano
    auto* zrank_cmd = app.add_subcommand("zrank", "rank of apparition z(n)");
    std::string zrank_n;
    zrank_cmd->add_option("n", zrank_n, "modulus, n >= 1")->required();
    auto* pisano_cmd = app.add_subcommand("pisano", "Pisano period of n");
    std::string pisano_n;
    pisano_cmd->add_option("n", pisano_n, "modulus, n >= 2")->required();

    // primdiv
    auto* primdiv_cmd = app.add_subcommand("primdiv", "primitive divisors of F_n or L_n");
    std::string primdiv_kind;
    SeqIndex primdiv_n = 0;
    primdiv_cmd->add_option("--kind", primdiv_kind, "fib|lucas")->required();
    primdiv_cmd->add_option("n", primdiv_n, "index, 1 <= n <= 200")->required();

    // sieve
    auto* sieve_cmd = app.add_subcommand("sieve", "residue rule for p | F_m^2 +- 1");
    std::string sieve_prime, sieve_offset;
    sieve_cmd->add_option("--prime", sieve_prime, "prime p >= 2")->required();
    sieve_cmd->add_option("--offset", sieve_offset, "plus|minus")->required();

    // identity
    auto* identity_cmd = app.add_subcommand("identity", "run an exhaustive identity suite");
    std::string identity_suite;
    SeqIndex identity_max = 0;
    identity_cmd->add_option("--suite", identity_suite, "shift|lemma-fib|lemma-lucas|families")
        ->required();
    identity_cmd->add_option("--max", identity_max, "index bound")->required();

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "solve one (family, sign, m) instance");
    std::string solve_family, solve_sign;
    SeqIndex solve_m = 0;
    bool solve_json = false;
    solve_cmd->add_option("--family", solve_family, "FF|LL|FL|LF (product kind first)")->required();
    solve_cmd->add_option("--sign", solve_sign, "plus|minus")->required();
    solve_cmd->add_option("--m", solve_m, "square-side index")->required();
    solve_cmd->add_flag("--json", solve_json, "machine-readable output");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "reproduce theorem solution tables");
    std::string verify_theorem_code;
    bool verify_all = false, verify_json = false;
    SeqIndex verify_m_max = -1;
    unsigned verify_threads = 1;
    verify_cmd->add_option("--theorem", verify_theorem_code, "FL+|FL-|LF+|LF-|LL-|LL+|FF-|FF+");
    verify_cmd->add_flag("--all", verify_all, "verify all eight theorems");
    verify_cmd->add_option("--m-max", verify_m_max, "override search bound");
    verify_cmd->add_flag("--json", verify_json, "machine-readable output");
    verify_cmd->add_option("--threads", verify_threads, "parallel fan-out cap");

    // brocard
    auto* brocard_cmd = app.add_subcommand("brocard", "n <= max with n! + 1 a perfect square");
    std::uint32_t brocard_max = 0;
    brocard_cmd->add_option("--max", brocard_max, "largest n, <= 5000")->required();

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        res.out = app.help();
        return res;
    } catch (const CLI::ParseError& e) {
        res.err = std::string(e.what()) + "\n";
        res.exit_code = 2;
        return res;
    }

    std::ostringstream os;
    try {
        if (seq_cmd->parsed()) {
            os << term_signed(detail::parse_kind(seq_kind), seq_n).str() << "\n";
        } else if (zrank_cmd->parsed()) {
            os << zrank(detail::parse_natural(zrank_n)) << "\n";
        } else if (pisano_cmd->parsed()) {
            os << pisano_period(detail::parse_natural(pisano_n)) << "\n";
        } else if (primdiv_cmd->parsed()) {
            const auto primes = primitive_divisors(detail::parse_kind(primdiv_kind), primdiv_n);
            for (std::size_t i = 0; i < primes.size(); ++i) os << (i ? "," : "") << primes[i].str();
            os << "\n";
        } else if (sieve_cmd->parsed()) {
            const Natural p = detail::parse_natural(sieve_prime);
            const Offset off =
                detail::parse_sign(sieve_offset) > 0 ? Offset::plus_one : Offset::minus_one;
            const SieveRule rule = sieve_rule(p, off);
            os << "modulus: " << rule.modulus << "; residues: ";
            for (std::size_t i = 0; i < rule.residues.size(); ++i)
                os << (i ? "," : "") << rule.residues[i];
            os << "\n";
        } else if (identity_cmd->parsed()) {
            const auto r = detail::run_identity_suite(identity_suite, identity_max);
            os << "suite " << identity_suite << " max " << identity_max << ": " << r.passed
               << " passed, " << r.failed << " failed\n";
            if (r.failed > 0) res.exit_code = 1;
        } else if (solve_cmd->parsed()) {
            const auto family = parse_family(solve_family);
            if (!family) throw std::invalid_argument("family must be FF, LL, FL or LF");
            const EquationInstance inst{*family, detail::parse_sign(solve_sign), solve_m};
            const auto records = solve_instance(inst);
            if (solve_json) {
                json j;
                j["family"] = family_code(*family);
                j["sign"] = inst.sign > 0 ? "+" : "-";
                j["m"] = inst.m;
                j["solutions"] = json::array();
                for (const auto& r : records) j["solutions"].push_back(detail::record_json(r, false));
                os << j.dump() << "\n";
            } else {
                if (records.empty()) os << "no solutions\n";
                for (const auto& r : records)
                    os << detail::join_indices(r.multiset.indices) << " product=" << r.product.str()
                       << " class=" << r.class_label() << "\n";
            }
        } else if (verify_cmd->parsed()) {
            const bool has_theorem = verify_cmd->count("--theorem") > 0;
            if (verify_all == has_theorem) {
                throw std::invalid_argument("verify needs exactly one of --theorem or --all");
            }
            std::vector<TheoremId> ids;
            if (verify_all) {
                ids.assign(std::begin(all_theorems), std::end(all_theorems));
            } else {
                const auto t = parse_theorem(verify_theorem_code);
                if (!t) throw std::invalid_argument("unknown theorem id: " + verify_theorem_code);
                ids.push_back(*t);
            }
            std::optional<SeqIndex> override_m;
            if (verify_cmd->count("--m-max") > 0) {
                if (verify_m_max < 0) throw std::invalid_argument("--m-max must be >= 0");
                override_m = verify_m_max;
            }
            bool all_match = true;
            json jreports = json::array();
            for (TheoremId t : ids) {
                const TheoremReport rep = verify_theorem(t, override_m, verify_threads);
                all_match = all_match && rep.match();
                if (verify_json) jreports.push_back(detail::report_json(rep));
                else detail::render_report_human(rep, os);
            }
            if (verify_json) {
                if (verify_all) {
                    json j;
                    j["all_match"] = all_match;
                    j["reports"] = jreports;
                    os << j.dump() << "\n";
                } else {
                    os << jreports.front().dump() << "\n";
                }
            } else if (verify_all) {
                os << "all: " << (all_match ? "MATCH" : "MISMATCH") << "\n";
            }
            if (!all_match) res.exit_code = 1;
        } else if (brocard_cmd->parsed()) {
            for (const auto& [n, m] : brocard_factorial_check(brocard_max))
                os << "(" << n << ", " << m.str() << ")\n";
        }
        res.out = os.str();
    } catch (const ResourceError& e) {
        res.err = std::string("resource error: ") + e.what() + "\n";
        res.exit_code = 3;
    } catch (const std::invalid_argument& e) {
        res.err = std::string("usage error: ") + e.what() + "\n";
        res.exit_code = 2;
    } catch (const std::domain_error& e) {
        res.err = std::string("usage error: ") + e.what() + "\n";
        res.exit_code = 2;
    } catch (const std::out_of_range& e) {
        res.err = std::string("usage error: ") + e.what() + "\n";
        res.exit_code = 2;
    } catch (const std::exception& e) {
        res.err = std::string("internal error: ") + e.what() + "\n";
        res.exit_code = 3;
    }
    return res;
}

}  // namespace fibluc::cli
