#pragma once

// Exact Fibonacci / Lucas sequence engine over arbitrary-precision integers,
// including the negative-index extension and index/magnitude inversion.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fibluc {

/// Arbitrary-precision integer. `Natural` names values that are >= 0 by
/// construction (sequence terms, products, targets); `BigInt` names signed
/// quantities (negative-index terms, identity sides). All arithmetic is exact.
using BigInt = boost::multiprecision::cpp_int;
using Natural = BigInt;

/// Signed sequence index.
using SeqIndex = std::int64_t;

enum class SequenceKind { fibonacci, lucas };

/// Hard cap on |index|; operations reject anything beyond it.
inline constexpr SeqIndex index_cap = 1'000'000;

/// An operation gave up: the named value resisted processing within the
/// configured effort budget.
class ResourceError : public std::runtime_error {
  public:
    ResourceError(std::string what, Natural blocker)
        : std::runtime_error(std::move(what)), blocker_(std::move(blocker)) {}
    const Natural& blocker() const { return blocker_; }

  private:
    Natural blocker_;
};

namespace detail {

// Indices up to this bound are served from a per-thread table grown by the
// plain pair-update recurrence; larger indices go through fast doubling.
// Both paths are exact, so the split is observationally invisible.
inline constexpr SeqIndex term_cache_limit = 2048;

inline void check_nonnegative_index(SeqIndex n) {
    if (n < 0) throw std::domain_error("bigseq: index must be >= 0");
    if (n > index_cap) throw std::out_of_range("bigseq: index exceeds cap");
}

// (F_n, F_{n+1}) by fast doubling.
inline std::pair<Natural, Natural> fib_pair(SeqIndex n) {
    if (n == 0) return {Natural(0), Natural(1)};
    auto [a, b] = fib_pair(n >> 1);
    Natural c = a * (2 * b - a);   // F_{2k}
    Natural d = a * a + b * b;     // F_{2k+1}
    if (n & 1) return {d, c + d};
    return {std::move(c), std::move(d)};
}

inline std::vector<Natural>& term_table(SequenceKind kind) {
    thread_local std::vector<Natural> fib{Natural(0), Natural(1)};
    thread_local std::vector<Natural> lucas{Natural(2), Natural(1)};
    return kind == SequenceKind::fibonacci ? fib : lucas;
}

}  // namespace detail

/// F_n or L_n by a pure fast-doubling evaluation (no cache).
inline Natural term_doubling(SequenceKind kind, SeqIndex n) {
    detail::check_nonnegative_index(n);
    if (kind == SequenceKind::fibonacci) return detail::fib_pair(n).first;
    // L_n = 2 F_{n+1} - F_n
    auto [fn, fn1] = detail::fib_pair(n);
    return 2 * fn1 - fn;
}

/// F_n or L_n, exact. Small indices come from a cached pair-update sweep,
/// large ones from fast doubling; results are identical.
inline Natural term(SequenceKind kind, SeqIndex n) {
    detail::check_nonnegative_index(n);
    if (n > detail::term_cache_limit) return term_doubling(kind, n);
    auto& tab = detail::term_table(kind);
    while (static_cast<SeqIndex>(tab.size()) <= n) {
        tab.push_back(tab[tab.size() - 1] + tab[tab.size() - 2]);
    }
    return tab[static_cast<std::size_t>(n)];
}

/// Signed-index extension: F_{-k} = (-1)^{k+1} F_k, L_{-k} = (-1)^k L_k.
inline BigInt term_signed(SequenceKind kind, SeqIndex n) {
    if (n >= 0) return term(kind, n);
    if (n < -index_cap) throw std::out_of_range("bigseq: index exceeds cap");
    const SeqIndex k = -n;
    BigInt v = term(kind, k);
    const bool negate = (kind == SequenceKind::fibonacci) ? (k % 2 == 0) : (k % 2 == 1);
    return negate ? -v : v;
}

/// Iterative pair-update sweep over consecutive terms; the plain-recurrence
/// counterpart to the fast-doubling path.
class TermCursor {
  public:
    explicit TermCursor(SequenceKind kind, SeqIndex start = 0)
        : kind_(kind), n_(start), cur_(term(kind, start)), nxt_(term(kind, start + 1)) {}

    SeqIndex index() const { return n_; }
    const Natural& value() const { return cur_; }
    const Natural& next_value() const { return nxt_; }

    void advance() {
        if (n_ + 1 > index_cap) throw std::out_of_range("bigseq: index exceeds cap");
        Natural t = cur_ + nxt_;
        cur_ = std::move(nxt_);
        nxt_ = std::move(t);
        ++n_;
    }

  private:
    SequenceKind kind_;
    SeqIndex n_;
    Natural cur_, nxt_;
};

/// Largest n >= 0 with term(kind, n) <= bound, or nullopt when no index
/// qualifies (Lucas with bound < 1). On the F_1 = F_2 tie the larger
/// index wins, so index_ceiling(fibonacci, 1) == 2.
inline std::optional<SeqIndex> index_ceiling(SequenceKind kind, const Natural& bound) {
    if (bound < 0) throw std::domain_error("index_ceiling: bound must be >= 0");
    std::optional<SeqIndex> best;
    // The sequences are non-decreasing from index 2 on; only L_0 > L_1 is out
    // of order, so scan past index 2 before trusting the first exceedance.
    for (TermCursor c(kind); ; c.advance()) {
        if (c.value() <= bound) best = c.index();
        else if (c.index() >= 2) break;
    }
    return best;
}

}  // namespace fibluc
