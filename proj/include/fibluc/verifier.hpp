#pragma once

// Reproduction of the eight product-square theorems by full bounded search:
// solve every m up to the theorem bound, compare against the transcribed
// solution tables plus parametric-family expansions, and report differences.
// Also the classical n! + 1 = m^2 spot check.

#include "fibluc/bigseq.hpp"
#include "fibluc/numthy.hpp"
#include "fibluc/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

namespace fibluc {

/// The eight theorems, in paper order. Code: product kind, square kind, sign.
enum class TheoremId { FLplus, FLminus, LFplus, LFminus, LLminus, LLplus, FFminus, FFplus };

inline constexpr TheoremId all_theorems[] = {
    TheoremId::FLplus,  TheoremId::FLminus, TheoremId::LFplus,  TheoremId::LFminus,
    TheoremId::LLminus, TheoremId::LLplus,  TheoremId::FFminus, TheoremId::FFplus,
};

inline std::string theorem_code(TheoremId t) {
    switch (t) {
        case TheoremId::FLplus: return "FL+";
        case TheoremId::FLminus: return "FL-";
        case TheoremId::LFplus: return "LF+";
        case TheoremId::LFminus: return "LF-";
        case TheoremId::LLminus: return "LL-";
        case TheoremId::LLplus: return "LL+";
        case TheoremId::FFminus: return "FF-";
        case TheoremId::FFplus: return "FF+";
    }
    throw std::logic_error("theorem_code: bad id");
}

inline std::optional<TheoremId> parse_theorem(std::string_view s) {
    for (TheoremId t : all_theorems) {
        if (theorem_code(t) == s) return t;
    }
    return std::nullopt;
}

inline EquationInstance instance_for(TheoremId t, SeqIndex m) {
    const auto F = SequenceKind::fibonacci;
    const auto L = SequenceKind::lucas;
    switch (t) {
        case TheoremId::FLplus: return {{F, L}, +1, m};
        case TheoremId::FLminus: return {{F, L}, -1, m};
        case TheoremId::LFplus: return {{L, F}, +1, m};
        case TheoremId::LFminus: return {{L, F}, -1, m};
        case TheoremId::LLminus: return {{L, L}, -1, m};
        case TheoremId::LLplus: return {{L, L}, +1, m};
        case TheoremId::FFminus: return {{F, F}, -1, m};
        case TheoremId::FFplus: return {{F, F}, +1, m};
    }
    throw std::logic_error("instance_for: bad id");
}

/// Search range per theorem. Sporadic solutions may appear only at
/// m <= sporadic_m_max; above it only parametric-family members are legal.
struct SearchBounds {
    SeqIndex m_max;
    SeqIndex sporadic_m_max;
};

inline SearchBounds theorem_bounds(TheoremId t) {
    switch (t) {
        case TheoremId::FLplus: return {60, 15};
        case TheoremId::FLminus: return {60, 5};
        case TheoremId::LFplus: return {52, 52};
        case TheoremId::LFminus: return {60, 10};
        case TheoremId::LLminus: return {60, 3};
        case TheoremId::LLplus: return {60, 12};
        case TheoremId::FFminus: return {60, 13};
        case TheoremId::FFplus: return {60, 14};
    }
    throw std::logic_error("theorem_bounds: bad id");
}

/// One-parameter infinite solution family: name decides the index pattern,
/// expansion runs over m in [m_lo, m_max] with the given parity.
struct FamilyGenerator {
    enum class Parity { any, odd, even };

    std::string name;
    SeqIndex m_lo;
    Parity parity;

    std::vector<SeqIndex> indices_at(SeqIndex m) const {
        std::vector<SeqIndex> idx;
        if (name == family_f5_plus || name == family_f5_minus) {
            idx = {5, m - 1, m + 1};
        } else if (name == family_delta_minus) {
            idx = {m - parity_offsets(m).delta, m + parity_offsets(m).delta};
        } else if (name == family_epsilon_plus) {
            idx = {m - parity_offsets(m).epsilon, m + parity_offsets(m).epsilon};
        } else {
            throw std::logic_error("FamilyGenerator: unknown family " + name);
        }
        std::sort(idx.begin(), idx.end());
        return idx;
    }

    bool applies_to(SeqIndex m) const {
        if (m < m_lo) return false;
        if (parity == Parity::odd) return m % 2 == 1;
        if (parity == Parity::even) return m % 2 == 0;
        return true;
    }
};

/// Transcription of one theorem's solution display: sporadic records as
/// (m, index multiset) plus the family generators.
struct ExpectedTable {
    std::vector<std::pair<SeqIndex, std::vector<SeqIndex>>> sporadics;
    std::vector<FamilyGenerator> families;
};

inline ExpectedTable expected_solutions(TheoremId t) {
    using P = FamilyGenerator::Parity;
    ExpectedTable tab;
    switch (t) {
        case TheoremId::FLplus:
            tab.sporadics = {
                {0, {4}},
                {1, {0}},
                {2, {3, 3, 3}},
                {2, {6}},
                {3, {4, 5}},
                {4, {3, 3, 3, 3, 4}},
                {4, {3, 4, 6}},
                {5, {4, 5, 6}},
                {5, {3, 3, 3, 4, 5}},
                {7, {3, 3, 3, 5, 8}},
                {11, {3, 3, 3, 3, 4, 4, 5, 10}},
                {11, {3, 4, 4, 5, 6, 10}},
                {13, {3, 3, 3, 3, 4, 4, 5, 14}},
                {13, {3, 4, 4, 5, 6, 14}},
            };
            tab.families = {{std::string(family_f5_plus), 7, P::odd}};
            break;
        case TheoremId::FLminus:
            tab.sporadics = {
                {0, {5}},
                {1, {3}},
                {2, {3, 5}},
                {4, {3, 5, 5}},
            };
            tab.families = {{std::string(family_f5_minus), 6, P::even}};
            break;
        case TheoremId::LFplus:
            tab.sporadics = {
                {3, {2}},
                {4, {0, 0, 0}},
                {4, {0, 3}},
                {5, {0, 0, 0, 2}},
                {5, {0, 2, 3}},
                {6, {2, 2, 4}},
                {7, {0, 0, 0, 2, 4}},
                {7, {0, 2, 3, 4}},
                // A + 1 = F_10^2 with A = 3024 in all five representations.
                {10, {0, 0, 0, 0, 2, 2, 2, 4}},
                {10, {0, 0, 0, 2, 4, 6}},
                {10, {0, 0, 2, 2, 2, 3, 4}},
                {10, {0, 2, 3, 4, 6}},
                {10, {2, 2, 2, 3, 3, 4}},
                // A L_8 + 1 = F_14^2.
                {14, {0, 0, 0, 0, 2, 2, 2, 4, 8}},
                {14, {0, 0, 0, 2, 4, 6, 8}},
                {14, {0, 0, 2, 2, 2, 3, 4, 8}},
                {14, {0, 2, 3, 4, 6, 8}},
                {14, {2, 2, 2, 3, 3, 4, 8}},
            };
            break;
        case TheoremId::LFminus:
            tab.sporadics = {
                {0, {1}},
                {1, {0}},
                {2, {0}},
            };
            break;
        case TheoremId::LLminus:
            tab.sporadics = {
                {1, {0}},
            };
            break;
        case TheoremId::LLplus:
            tab.sporadics = {
                {0, {2}},
                {2, {0, 0, 0}},
                {2, {0, 3}},
                {4, {0, 0, 0, 0, 2}},
                {4, {0, 0, 2, 3}},
                {4, {2, 3, 3}},
            };
            break;
        case TheoremId::FFminus:
            tab.sporadics = {
                {0, {1}},
                {0, {2}},
                {1, {3}},
                {2, {3}},
                {3, {5}},
            };
            tab.families = {{std::string(family_delta_minus), 4, P::any}};
            break;
        case TheoremId::FFplus:
            tab.sporadics = {
                {1, {0}},
                {2, {0}},
                {3, {4}},
                {4, {3, 3, 3}},
                {4, {6}},
                {5, {3, 3, 3, 4}},
                {7, {3, 3, 3, 8}},
                {8, {3, 3, 3, 10}},
                // A F_{2j} + 1 = F_m^2 with A = 144 in both representations.
                {10, {3, 4, 4, 6, 8}},
                {10, {3, 3, 3, 3, 4, 4, 8}},
                {11, {3, 4, 4, 6, 10}},
                {11, {3, 3, 3, 3, 4, 4, 10}},
                {13, {3, 4, 4, 6, 14}},
                {13, {3, 3, 3, 3, 4, 4, 14}},
                {14, {3, 4, 4, 6, 16}},
                {14, {3, 3, 3, 3, 4, 4, 16}},
            };
            tab.families = {{std::string(family_epsilon_plus), 5, P::any}};
            break;
    }
    return tab;
}

/// Expected table expanded to concrete records over [0, m_max]; every record
/// (sporadic transcription or family member) is re-verified arithmetically.
inline std::vector<SolutionRecord> expand_expected(TheoremId t, SeqIndex m_max) {
    const ExpectedTable tab = expected_solutions(t);
    std::set<std::pair<SeqIndex, std::vector<SeqIndex>>> seen;
    std::vector<SolutionRecord> out;
    auto add = [&](SeqIndex m, std::vector<SeqIndex> idx, std::optional<std::string> fam) {
        if (!seen.insert({m, idx}).second) return;
        const EquationInstance inst = instance_for(t, m);
        FactorMultiset ms{inst.family.product_kind, std::move(idx)};
        Natural product = ms.product();
        const Natural square = term(inst.family.square_kind, m);
        if (BigInt(product) + inst.sign != BigInt(square * square))
            throw std::logic_error("expand_expected: transcribed record fails its equation at " +
                                   theorem_code(t) + " m=" + std::to_string(m));
        out.push_back(SolutionRecord{inst, std::move(ms), std::move(product), std::move(fam)});
    };
    for (const auto& [m, idx] : tab.sporadics) {
        if (m <= m_max) add(m, idx, std::nullopt);
    }
    for (const auto& gen : tab.families) {
        for (SeqIndex m = gen.m_lo; m <= m_max; ++m) {
            if (gen.applies_to(m)) add(m, gen.indices_at(m), gen.name);
        }
    }
    std::sort(out.begin(), out.end(), [](const SolutionRecord& a, const SolutionRecord& b) {
        if (a.instance.m != b.instance.m) return a.instance.m < b.instance.m;
        return canonical_less(a.multiset.indices, b.multiset.indices);
    });
    return out;
}

/// Set difference of solution-record lists keyed by (m, index multiset):
/// first = in `expected` but not `found`, second = in `found` but not
/// `expected`. Order of each output follows its input.
inline std::pair<std::vector<SolutionRecord>, std::vector<SolutionRecord>> record_diff(
    const std::vector<SolutionRecord>& found, const std::vector<SolutionRecord>& expected) {
    auto key = [](const SolutionRecord& r) { return std::pair(r.instance.m, r.multiset.indices); };
    std::set<std::pair<SeqIndex, std::vector<SeqIndex>>> found_keys, expected_keys;
    for (const auto& r : found) found_keys.insert(key(r));
    for (const auto& r : expected) expected_keys.insert(key(r));
    std::pair<std::vector<SolutionRecord>, std::vector<SolutionRecord>> out;
    for (const auto& r : expected)
        if (!found_keys.count(key(r))) out.first.push_back(r);
    for (const auto& r : found)
        if (!expected_keys.count(key(r))) out.second.push_back(r);
    return out;
}

/// Outcome of reproducing one theorem: searched records vs expected records,
/// set differences, and the auxiliary consistency checks.
struct TheoremReport {
    TheoremId theorem;
    SearchBounds bounds;
    std::vector<SolutionRecord> found;
    std::vector<SolutionRecord> expected;
    std::vector<SolutionRecord> missing;  // expected but not found
    std::vector<SolutionRecord> extra;    // found but not expected
    bool sieve_cross_check_ok = true;     // LF+ only: sieve-eliminated m must be empty
    bool sporadic_above_cap = false;      // sporadic record above sporadic_m_max

    bool match() const {
        return missing.empty() && extra.empty() && sieve_cross_check_ok && !sporadic_above_cap;
    }

    std::vector<SeqIndex> solvable_m() const {
        std::set<SeqIndex> ms;
        for (const auto& r : found) ms.insert(r.instance.m);
        return {ms.begin(), ms.end()};
    }
};

inline TheoremReport verify_theorem(TheoremId t, std::optional<SeqIndex> m_max_override = {},
                                    unsigned threads = 1) {
    TheoremReport rep;
    rep.theorem = t;
    rep.bounds = theorem_bounds(t);
    if (m_max_override) rep.bounds.m_max = *m_max_override;
    const SeqIndex m_max = rep.bounds.m_max;

    rep.expected = expand_expected(t, m_max);

    std::vector<std::vector<SolutionRecord>> per_m(static_cast<std::size_t>(m_max) + 1);
    if (threads <= 1) {
        for (SeqIndex m = 0; m <= m_max; ++m) per_m[static_cast<std::size_t>(m)] = solve_instance(instance_for(t, m));
    } else {
        std::atomic<SeqIndex> next{0};
        auto worker = [&] {
            for (SeqIndex m = next.fetch_add(1); m <= m_max; m = next.fetch_add(1))
                per_m[static_cast<std::size_t>(m)] = solve_instance(instance_for(t, m));
        };
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (auto& recs : per_m)
        for (auto& r : recs) rep.found.push_back(std::move(r));

    std::tie(rep.missing, rep.extra) = record_diff(rep.found, rep.expected);

    for (const auto& r : rep.found)
        if (r.instance.m > rep.bounds.sporadic_m_max && !r.family_name) rep.sporadic_above_cap = true;

    if (t == TheoremId::LFplus) {
        // Independent cross-elimination: primes whose rank of apparition is
        // odd divide no Lucas number, so any m they eliminate must be empty.
        std::vector<SieveRule> rules;
        for (int p : {5, 13, 17, 89, 37, 233}) rules.push_back(sieve_rule(p, Offset::minus_one));
        for (SeqIndex m = 0; m <= m_max; ++m) {
            if (!sieve_admissible(m, rules) && !per_m[static_cast<std::size_t>(m)].empty())
                rep.sieve_cross_check_ok = false;
        }
    }
    return rep;
}

/// All n <= n_max with n! + 1 a perfect square, by exact integer square root.
inline std::vector<std::pair<std::uint32_t, Natural>> brocard_factorial_check(std::uint32_t n_max) {
    if (n_max > 5000) throw std::out_of_range("brocard_factorial_check: n_max above cap 5000");
    std::vector<std::pair<std::uint32_t, Natural>> out;
    Natural factorial = 1;
    for (std::uint32_t n = 1; n <= n_max; ++n) {
        factorial *= n;
        const Natural v = factorial + 1;
        Natural r = isqrt(v);
        if (r * r == v) out.emplace_back(n, std::move(r));
    }
    return out;
}

}  // namespace fibluc
