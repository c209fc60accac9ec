#pragma once

// Enumeration of all nontrivial representations of a target value as a
// product of Fibonacci or Lucas numbers, and exact solving of one
// (family, sign, m) product-square equation instance.

#include "fibluc/bigseq.hpp"
#include "fibluc/identities.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fibluc {

/// One of the four equation shapes: product of `product_kind` terms, +-1,
/// equals the square of a `square_kind` term. Two-letter code, product first:
/// FF, LL, FL, LF.
struct EquationFamily {
    SequenceKind product_kind;
    SequenceKind square_kind;

    friend bool operator==(const EquationFamily&, const EquationFamily&) = default;
};

inline std::string family_code(EquationFamily f) {
    auto c = [](SequenceKind k) { return k == SequenceKind::fibonacci ? 'F' : 'L'; };
    return std::string{c(f.product_kind), c(f.square_kind)};
}

inline std::optional<EquationFamily> parse_family(std::string_view s) {
    if (s.size() != 2) return std::nullopt;
    auto kind = [](char c) -> std::optional<SequenceKind> {
        if (c == 'F' || c == 'f') return SequenceKind::fibonacci;
        if (c == 'L' || c == 'l') return SequenceKind::lucas;
        return std::nullopt;
    };
    auto p = kind(s[0]), q = kind(s[1]);
    if (!p || !q) return std::nullopt;
    return EquationFamily{*p, *q};
}

/// product + sign = square(m)^2, sign in {+1, -1}.
struct EquationInstance {
    EquationFamily family;
    int sign = +1;
    SeqIndex m = 0;

    /// Value the product must equal; negative only for sign +1 at a zero
    /// square term, which makes the instance vacuously unsolvable.
    BigInt target() const {
        const Natural s = term(family.square_kind, m);
        return BigInt(s * s) - sign;
    }

    friend bool operator==(const EquationInstance&, const EquationInstance&) = default;
};

/// Nontriviality rule for product factors: a singleton may use any index;
/// with k >= 2 factors, Fibonacci indices must be >= 3 and Lucas indices
/// must differ from 1 (excludes padding by F_0 = 0, F_1 = F_2 = 1, L_1 = 1).
struct NontrivialityPolicy {
    bool composite_index_allowed(SequenceKind kind, SeqIndex n) const {
        return kind == SequenceKind::fibonacci ? n >= 3 : n != 1;
    }
};

/// Sorted multiset of sequence indices whose terms multiply to a product.
struct FactorMultiset {
    SequenceKind kind;
    std::vector<SeqIndex> indices;  // non-decreasing, all >= 0

    Natural product() const {
        Natural v = 1;
        for (SeqIndex n : indices) v *= term(kind, n);
        return v;
    }

    friend bool operator==(const FactorMultiset&, const FactorMultiset&) = default;
};

inline Natural product_value(const FactorMultiset& ms) {
    if (ms.indices.empty()) throw std::domain_error("product_value: empty multiset");
    return ms.product();
}

/// Canonical output order: by factor count, then lexicographic indices.
inline bool canonical_less(const std::vector<SeqIndex>& a, const std::vector<SeqIndex>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

namespace detail {

// Work cap: the factor pool may not grow past this many indices.
inline constexpr SeqIndex enumerate_pool_cap = 2000;

struct PoolEntry {
    SeqIndex index;
    Natural value;
};

inline void product_dfs(const std::vector<PoolEntry>& pool, std::size_t from, const Natural& cofactor,
                        std::vector<SeqIndex>& stack, std::vector<std::vector<SeqIndex>>& out) {
    if (cofactor == 1) {
        if (stack.size() >= 2) {
            std::vector<SeqIndex> sol(stack.rbegin(), stack.rend());
            out.push_back(std::move(sol));
        }
        return;
    }
    for (std::size_t j = from; j < pool.size(); ++j) {
        const auto& [idx, v] = pool[j];
        if (v > cofactor || cofactor % v != 0) continue;
        stack.push_back(idx);
        product_dfs(pool, j, cofactor / v, stack, out);
        stack.pop_back();
    }
}

}  // namespace detail

/// The complete, duplicate-free, canonically ordered list of nontrivial
/// multisets whose product equals target. Depth-first search over the factor
/// pool in non-increasing index order, descending only into indices whose
/// term divides the remaining cofactor; singletons are a separate pass.
inline std::vector<FactorMultiset> enumerate_products(SequenceKind kind, const Natural& target,
                                                      const NontrivialityPolicy& policy = {}) {
    if (target < 0) throw std::domain_error("enumerate_products: target must be >= 0");
    std::vector<std::vector<SeqIndex>> found;

    if (target == 0) {
        // F_0 = 0 is the only zero term; a k >= 2 multiset may not contain it.
        if (kind == SequenceKind::fibonacci) found.push_back({0});
    } else {
        // Singletons: any index whose term equals target (F_1 = F_2 = 1 gives
        // two distinct records for target 1).
        for (TermCursor c(kind); ; c.advance()) {
            if (c.index() > detail::enumerate_pool_cap)
                throw ResourceError("enumerate_products: target beyond work cap", target);
            if (c.value() == target) found.push_back({c.index()});
            if (c.index() >= 2 && c.value() > target) break;
        }

        // k >= 2 pool: policy-admissible indices with term in [2, target/2].
        std::vector<detail::PoolEntry> pool;
        const Natural half = target / 2;
        for (TermCursor c(kind); ; c.advance()) {
            if (c.index() >= 2 && c.value() > half) break;
            if (c.value() >= 2 && c.value() <= half && policy.composite_index_allowed(kind, c.index()))
                pool.push_back({c.index(), c.value()});
        }
        std::reverse(pool.begin(), pool.end());  // non-increasing term order
        std::vector<SeqIndex> stack;
        detail::product_dfs(pool, 0, target, stack, found);
    }

    std::sort(found.begin(), found.end(), canonical_less);
    std::vector<FactorMultiset> out;
    out.reserve(found.size());
    for (auto& idx : found) out.push_back(FactorMultiset{kind, std::move(idx)});
    return out;
}

/// Parametric family tags; fixed machine-readable names.
inline constexpr std::string_view family_f5_plus = "F5-neighbors-plus";
inline constexpr std::string_view family_f5_minus = "F5-neighbors-minus";
inline constexpr std::string_view family_delta_minus = "delta-pair-minus";
inline constexpr std::string_view family_epsilon_plus = "epsilon-pair-plus";

/// Family membership of a multiset for its (family, sign, m); nullopt means
/// sporadic.
inline std::optional<std::string> classify_family(const EquationInstance& inst,
                                                  const FactorMultiset& ms) {
    const auto& fam = inst.family;
    const SeqIndex m = inst.m;
    auto matches = [&](std::vector<SeqIndex> pattern) {
        std::sort(pattern.begin(), pattern.end());
        return ms.indices == pattern;
    };
    if (fam.product_kind == SequenceKind::fibonacci && fam.square_kind == SequenceKind::lucas) {
        // F_5 F_{m-1} F_{m+1} +- 1 = L_m^2: +1 for odd m, -1 for even m.
        if (inst.sign == +1 && m >= 3 && m % 2 == 1 && matches({5, m - 1, m + 1}))
            return std::string(family_f5_plus);
        if (inst.sign == -1 && m >= 4 && m % 2 == 0 && matches({5, m - 1, m + 1}))
            return std::string(family_f5_minus);
    }
    if (fam.product_kind == SequenceKind::fibonacci && fam.square_kind == SequenceKind::fibonacci) {
        const ParityOffsets po = parity_offsets(m);
        if (inst.sign == -1 && m >= 4 && matches({m - po.delta, m + po.delta}))
            return std::string(family_delta_minus);
        if (inst.sign == +1 && m >= 5 && matches({m - po.epsilon, m + po.epsilon}))
            return std::string(family_epsilon_plus);
    }
    return std::nullopt;
}

/// One verified solution: multiset, exact product, family tag or sporadic.
struct SolutionRecord {
    EquationInstance instance;
    FactorMultiset multiset;
    Natural product;
    std::optional<std::string> family_name;  // nullopt = sporadic

    std::string class_label() const { return family_name ? *family_name : "sporadic"; }
};

/// All nontrivial solutions of the instance, canonically ordered. Every
/// record is re-verified: product + sign == square term squared, exactly.
inline std::vector<SolutionRecord> solve_instance(const EquationInstance& inst) {
    if (inst.m < 0) throw std::domain_error("solve_instance: requires m >= 0");
    if (inst.m > 200) throw std::out_of_range("solve_instance: m above desk-scale cap 200");
    if (inst.sign != 1 && inst.sign != -1)
        throw std::domain_error("solve_instance: sign must be +1 or -1");
    const BigInt target = inst.target();
    std::vector<SolutionRecord> out;
    if (target < 0) return out;  // vacuously unsolvable
    const Natural square = term(inst.family.square_kind, inst.m);
    for (auto& ms : enumerate_products(inst.family.product_kind, Natural(target))) {
        Natural product = ms.product();
        if (BigInt(product) + inst.sign != BigInt(square * square))
            throw std::logic_error("solve_instance: solution failed re-verification");
        auto fam = classify_family(inst, ms);
        out.push_back(SolutionRecord{inst, std::move(ms), std::move(product), std::move(fam)});
    }
    return out;
}

}  // namespace fibluc
