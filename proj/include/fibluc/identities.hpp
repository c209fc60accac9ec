#pragma once

// Exact factorization identities for F_m^2 +- 1 and L_m^2 +- 1, the general
// index-shift identity F_{m-k}F_{m+k} = F_m^2 + (-1)^{m-k+1}F_k^2, and the
// parity offsets epsilon/delta used by the product-square equation families.

#include "fibluc/bigseq.hpp"

#include <stdexcept>

namespace fibluc {

/// The additive constant on the square side: minus_one names X_m^2 - 1,
/// plus_one names X_m^2 + 1. One convention, used everywhere (identities,
/// sieves, solver targets) to keep the eight +-1 variants straight.
enum class Offset : int { minus_one = -1, plus_one = +1 };

inline int offset_value(Offset o) { return static_cast<int>(o); }

namespace detail {
inline bool parity_even(SeqIndex n) { return ((n % 2) + 2) % 2 == 0; }
}

/// F_{m-k}F_{m+k} == F_m^2 + (-1)^{m-k+1}F_k^2, evaluated exactly with
/// signed-index terms. Holds for all integers m, k; the return value is the
/// comparison, not an assumption.
inline bool shift_identity_check(SeqIndex m, SeqIndex k) {
    const BigInt lhs = term_signed(SequenceKind::fibonacci, m - k) *
                       term_signed(SequenceKind::fibonacci, m + k);
    const BigInt fm = term_signed(SequenceKind::fibonacci, m);
    const BigInt fk = term_signed(SequenceKind::fibonacci, k);
    const int sign = detail::parity_even(m - k + 1) ? +1 : -1;
    return lhs == fm * fm + sign * fk * fk;
}

/// Index pair (m-g, m+g), g in {1,2}, whose Fibonacci product equals
/// F_m^2 + offset exactly. For m = 1 with offset +1 the lower index is -1
/// and is evaluated through the signed extension (F_{-1} = 1).
struct FibSquareFactorization {
    SeqIndex lower_index;
    SeqIndex upper_index;

    BigInt value() const {
        return term_signed(SequenceKind::fibonacci, lower_index) *
               term_signed(SequenceKind::fibonacci, upper_index);
    }
};

inline FibSquareFactorization factor_fib_square(SeqIndex m, Offset offset) {
    if (m < 1) throw std::domain_error("factor_fib_square: requires m >= 1");
    const bool even = m % 2 == 0;
    // offset -1: gap 1 when m odd, gap 2 when m even; offset +1 swaps the cases.
    const SeqIndex gap = (offset == Offset::minus_one) ? (even ? 2 : 1) : (even ? 1 : 2);
    return {m - gap, m + gap};
}

/// L_m^2 + offset as either F_{3m}/F_m (exact quotient) or 5 F_{m-1} F_{m+1}.
struct LucasSquareFactorization {
    enum class Form { quotient, five_times };

    Form form;
    SeqIndex a;  // quotient: numerator index 3m;  five_times: lower index m-1
    SeqIndex b;  // quotient: denominator index m; five_times: upper index m+1

    SeqIndex numerator_index() const { return a; }
    SeqIndex denominator_index() const { return b; }
    SeqIndex lower_index() const { return a; }
    SeqIndex upper_index() const { return b; }
    static constexpr int scalar = 5;

    /// Exact value; the quotient form performs (and checks) the division.
    Natural value() const {
        if (form == Form::quotient) {
            const Natural num = term(SequenceKind::fibonacci, a);
            const Natural den = term(SequenceKind::fibonacci, b);
            Natural q, r;
            boost::multiprecision::divide_qr(num, den, q, r);
            if (r != 0) throw std::logic_error("LucasSquareFactorization: F_m does not divide F_{3m}");
            return q;
        }
        return scalar * term(SequenceKind::fibonacci, a) * term(SequenceKind::fibonacci, b);
    }
};

inline LucasSquareFactorization factor_lucas_square(SeqIndex m, Offset offset) {
    if (m < 1) throw std::domain_error("factor_lucas_square: requires m >= 1");
    const bool even = m % 2 == 0;
    const bool quotient = (offset == Offset::minus_one) ? even : !even;
    if (quotient) return {LucasSquareFactorization::Form::quotient, 3 * m, m};
    return {LucasSquareFactorization::Form::five_times, m - 1, m + 1};
}

/// epsilon(m) = 1 if m odd else 2;  delta(m) = 1 if m even else 2.
struct ParityOffsets {
    int epsilon;
    int delta;
};

inline ParityOffsets parity_offsets(SeqIndex m) {
    if (m < 0) throw std::domain_error("parity_offsets: requires m >= 0");
    return (m % 2 == 0) ? ParityOffsets{2, 1} : ParityOffsets{1, 2};
}

}  // namespace fibluc
