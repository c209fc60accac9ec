// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include "fibluc/cli.hpp"
#include "fibluc/identities.hpp"
#include "fibluc/numthy.hpp"
#include "fibluc/solver.hpp"
#include "fibluc/verifier.hpp"

#include "support/oracle.hpp"

#include <chrono>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

using namespace fibluc;

namespace {

constexpr auto F = SequenceKind::fibonacci;
constexpr auto L = SequenceKind::lucas;

int failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report(int id, const std::string& name, bool ok, double secs) {
    std::printf("[%s] criterion %d: %s (%.2fs)\n", ok ? "PASS" : "FAIL", id, name.c_str(), secs);
    if (!ok) ++failures;
}

bool has_record(const TheoremReport& rep, SeqIndex m, const std::vector<SeqIndex>& idx) {
    for (const auto& r : rep.found)
        if (r.instance.m == m && r.multiset.indices == idx) return true;
    return false;
}

// 1. verify --all exits 0 and each report matches the transcribed tables.
void criterion_theorems() {
    Timer t;
    bool ok = true;

    const auto outcome = cli::dispatch({"verify", "--all"});
    ok = ok && outcome.exit_code == 0;

    std::map<TheoremId, TheoremReport> reps;
    for (TheoremId id : all_theorems) reps.emplace(id, verify_theorem(id));
    for (const auto& [id, rep] : reps) ok = ok && rep.match();

    // LF+: solvable m exactly {3,4,5,6,7,10,14}, all five representations of 3024
    const auto& lfp = reps.at(TheoremId::LFplus);
    ok = ok && lfp.solvable_m() == std::vector<SeqIndex>{3, 4, 5, 6, 7, 10, 14};
    const std::vector<std::vector<SeqIndex>> a3024{{0, 0, 0, 0, 2, 2, 2, 4},
                                                   {0, 0, 0, 2, 4, 6},
                                                   {0, 0, 2, 2, 2, 3, 4},
                                                   {0, 2, 3, 4, 6},
                                                   {2, 2, 2, 3, 3, 4}};
    for (const auto& idx : a3024) {
        ok = ok && has_record(lfp, 10, idx);
        ok = ok && product_value({L, idx}) == 3024;
    }

    // LL+: solvable m exactly {0,2,4} with the Szalay-corrected record L_0 L_3 + 1 = L_2^2
    const auto& llp = reps.at(TheoremId::LLplus);
    ok = ok && llp.solvable_m() == std::vector<SeqIndex>{0, 2, 4};
    ok = ok && has_record(llp, 2, {0, 3});

    // LL-: only m = 1; LF-: only m in {0,1,2}
    ok = ok && reps.at(TheoremId::LLminus).solvable_m() == std::vector<SeqIndex>{1};
    ok = ok && reps.at(TheoremId::LFminus).solvable_m() == std::vector<SeqIndex>{0, 1, 2};

    // FL+: sporadics only at odd m <= 15; exactly one family solution {5, m-1, m+1}
    // for each odd 17 <= m <= 59
    const auto& flp = reps.at(TheoremId::FLplus);
    for (const auto& r : flp.found) {
        if (!r.family_name) ok = ok && r.instance.m <= 15;
    }
    for (SeqIndex m = 17; m <= 59; m += 2) {
        std::vector<std::vector<SeqIndex>> at_m;
        for (const auto& r : flp.found)
            if (r.instance.m == m) at_m.push_back(r.multiset.indices);
        ok = ok && at_m == std::vector<std::vector<SeqIndex>>{{5, m - 1, m + 1}};
    }

    // FF+/FF-: family pairs present for all applicable m <= 60
    const auto& ffp = reps.at(TheoremId::FFplus);
    const auto& ffm = reps.at(TheoremId::FFminus);
    for (SeqIndex m = 5; m <= 60; ++m) {
        const int e = parity_offsets(m).epsilon;
        ok = ok && has_record(ffp, m, {m - e, m + e});
    }
    for (SeqIndex m = 4; m <= 60; ++m) {
        const int d = parity_offsets(m).delta;
        ok = ok && has_record(ffm, m, {m - d, m + d});
    }
    // FF sporadics match the transcribed lists exactly (match() already
    // compared found vs expected; spot-check the two A = 144 rows at m = 14)
    ok = ok && has_record(ffp, 14, {3, 4, 4, 6, 16});
    ok = ok && has_record(ffp, 14, {3, 3, 3, 3, 4, 4, 16});

    const double secs = t.seconds();
    ok = ok && secs < 120.0;
    report(1, "theorem reproduction: verify --all matches all eight tables", ok, secs);
}

// 2. identity suites, exact, zero tolerance.
void criterion_identities() {
    Timer t;
    bool ok = true;
    std::uint64_t shift_cases = 0;
    for (SeqIndex m = -200; m <= 200; ++m) {
        for (SeqIndex k = -200; k <= 200; ++k) {
            ok = ok && shift_identity_check(m, k);
            ++shift_cases;
        }
    }
    ok = ok && shift_cases == 160'801;

    for (SeqIndex m = 1; m <= 300; ++m) {
        for (Offset off : {Offset::minus_one, Offset::plus_one}) {
            const Natural fm = term(F, m), lm = term(L, m);
            ok = ok && factor_fib_square(m, off).value() == BigInt(fm * fm) + offset_value(off);
            ok = ok &&
                 BigInt(factor_lucas_square(m, off).value()) == BigInt(lm * lm) + offset_value(off);
        }
    }

    for (SeqIndex m = 3; m <= 199; m += 2)
        ok = ok && term(F, 5) * term(F, m - 1) * term(F, m + 1) + 1 == term(L, m) * term(L, m);
    for (SeqIndex m = 2; m <= 200; m += 2)
        ok = ok && term(F, 5) * term(F, m - 1) * term(F, m + 1) - 1 == term(L, m) * term(L, m);
    for (SeqIndex m = 4; m <= 200; ++m) {
        const int d = parity_offsets(m).delta;
        ok = ok && term(F, m - d) * term(F, m + d) - 1 == term(F, m) * term(F, m);
    }
    for (SeqIndex m = 5; m <= 200; ++m) {
        const int e = parity_offsets(m).epsilon;
        ok = ok && term(F, m - e) * term(F, m + e) + 1 == term(F, m) * term(F, m);
    }
    report(2, "identity suites: shift box 160801 cases, lemmas to 300, families to 200", ok,
           t.seconds());
}

// 3. primitive-divisor existence matches the exception sets for n <= 120.
void criterion_primitive_divisors() {
    Timer t;
    bool ok = true;
    const std::set<SeqIndex> fib_exc{1, 2, 6, 12};
    const std::set<SeqIndex> lucas_exc{1, 6};
    try {
        for (SeqIndex n = 1; n <= 120; ++n) {
            ok = ok && primitive_divisors(F, n).empty() == (fib_exc.count(n) > 0);
            ok = ok && primitive_divisors(L, n).empty() == (lucas_exc.count(n) > 0);
        }
    } catch (const std::exception&) {
        ok = false;  // includes any definitional/zrank disagreement
    }
    report(3, "primitive divisors: Carmichael exception sets {1,2,6,12} / {1,6} up to 120", ok,
           t.seconds());
}

// 4. zrank, pisano and sieve fixtures from the paper.
void criterion_fixtures() {
    Timer t;
    bool ok = true;
    ok = ok && zrank(5) == 5 && zrank(13) == 7 && zrank(17) == 9;
    ok = ok && zrank(89) == 11 && zrank(37) == 19 && zrank(233) == 13;
    ok = ok && pisano_period(5) == 20 && pisano_period(13) == 28 && pisano_period(17) == 36;

    const auto r5 = sieve_rule(5, Offset::minus_one);
    const auto r13 = sieve_rule(13, Offset::minus_one);
    const auto r17 = sieve_rule(17, Offset::minus_one);
    ok = ok && r5.modulus == 20 &&
         r5.residues == std::vector<std::uint32_t>{1, 2, 8, 9, 11, 12, 18, 19};
    ok = ok && r13.modulus == 28 &&
         r13.residues == std::vector<std::uint32_t>{1, 2, 12, 13, 15, 16, 26, 27};
    ok = ok && r17.modulus == 36 &&
         r17.residues == std::vector<std::uint32_t>{1, 2, 16, 17, 19, 20, 34, 35};
    report(4, "number-theory fixtures: z(p), Pisano periods, paper residue sets", ok, t.seconds());
}

// 5. Ward criterion verified by full-period scans for odd primes below 1000.
void criterion_ward() {
    Timer t;
    bool ok = true;
    int odd_rank_primes = 0;
    try {
        for (std::uint32_t p = 3; p < 1000; ++p) {
            if (!is_prime(p)) continue;
            // throws if the scan ever contradicts the criterion
            if (prime_avoids_lucas(p, true)) ++odd_rank_primes;
        }
    } catch (const std::exception&) {
        ok = false;
    }
    ok = ok && odd_rank_primes > 0;
    report(5, "Ward criterion: no Lucas term divisible by any odd-rank prime < 1000", ok,
           t.seconds());
}

// 6. pruned enumeration equals unpruned brute force.
void criterion_solver_oracle() {
    Timer t;
    bool ok = true;
    auto check = [&](SequenceKind kind, std::uint64_t target) {
        std::vector<std::vector<SeqIndex>> got;
        for (const auto& ms : enumerate_products(kind, target)) got.push_back(ms.indices);
        const auto want =
            oracle::enumerate(kind == F ? oracle::Kind::fib : oracle::Kind::lucas, target);
        ok = ok && got == want;
    };
    std::mt19937_64 rng(20170511);
    for (int i = 0; i < 500; ++i) {
        const std::uint64_t target = rng() % 1'000'001;
        check(F, target);
        check(L, target);
    }
    for (SeqIndex m = 0; m <= 25; ++m) {
        for (auto kind : {F, L}) {
            const Natural term_m = term(kind, m);
            const auto sq = static_cast<std::uint64_t>(term_m * term_m);
            for (int off : {-1, +1}) {
                if (sq == 0 && off < 0) continue;
                check(F, sq + off);
                check(L, sq + off);
            }
        }
    }
    report(6, "solver-oracle equivalence: 500 seeded targets plus all squares +-1 to m=25", ok,
           t.seconds());
}

// 7. brocard --max 1000 returns exactly the three classical solutions.
void criterion_brocard() {
    Timer t;
    const auto outcome = cli::dispatch({"brocard", "--max", "1000"});
    bool ok = outcome.exit_code == 0 && outcome.out == "(4, 5)\n(5, 11)\n(7, 71)\n";
    const double secs = t.seconds();
    ok = ok && secs < 60.0;
    report(7, "Brocard spot check: n! + 1 square only for n = 4, 5, 7 up to 1000", ok, secs);
}

}  // namespace

int main() {
    criterion_theorems();
    criterion_identities();
    criterion_primitive_divisors();
    criterion_fixtures();
    criterion_ward();
    criterion_solver_oracle();
    criterion_brocard();
    if (failures == 0) {
        std::printf("ACCEPTANCE: all 7 criteria passed\n");
        return 0;
    }
    std::printf("ACCEPTANCE: %d criterion(s) FAILED\n", failures);
    return 1;
}
