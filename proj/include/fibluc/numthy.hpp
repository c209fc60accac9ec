#pragma once

// Primality, exact integer factorization, rank of apparition z(n), Pisano
// periods, primitive divisors of F_n / L_n, Ward's Lucas-avoidance criterion,
// and residue-class sieve rules for primes dividing F_m^2 +- 1.

#include "fibluc/bigseq.hpp"
#include "fibluc/identities.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace fibluc {

enum class Primality { composite, prime, probable_prime };

namespace detail {

inline constexpr std::uint64_t u64_max = std::numeric_limits<std::uint64_t>::max();

inline std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod64(r, a, m);
        a = mulmod64(a, a, m);
        e >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin; this 12-base set is exact well beyond 2^64.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod64(x, x, n);
            if (x == n - 1) { witness = false; break; }
        }
        if (witness) return false;
    }
    return true;
}

inline bool mr_round(const Natural& n, const Natural& n_minus_1, const Natural& d, int s,
                     const Natural& base) {
    Natural x = boost::multiprecision::powm(base, d, n);
    if (x == 1 || x == n_minus_1) return true;
    for (int i = 1; i < s; ++i) {
        x = (x * x) % n;
        if (x == n_minus_1) return true;
    }
    return false;
}

inline constexpr int mr_rounds_big = 66;  // worst-case error 4^-66 < 2^-128

}  // namespace detail

/// Exact for n < 2^64; probabilistic above (worst-case error < 2^-128,
/// deterministic base schedule keyed to n), reported as probable_prime.
inline Primality classify_prime(const Natural& n) {
    if (n < 2) return Primality::composite;
    if (n <= detail::u64_max) {
        return detail::is_prime_u64(static_cast<std::uint64_t>(n)) ? Primality::prime
                                                                   : Primality::composite;
    }
    const Natural n1 = n - 1;
    Natural d = n1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    int rounds = 0;
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (!detail::mr_round(n, n1, d, s, Natural(a))) return Primality::composite;
        ++rounds;
    }
    std::uint64_t state = static_cast<std::uint64_t>(n % 0xFFFFFFFFFFFFFFC5ull) ^ 0x9E3779B97F4A7C15ull;
    for (; rounds < detail::mr_rounds_big; ++rounds) {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        Natural base = 2 + Natural(state) % (n - 3);
        if (!detail::mr_round(n, n1, d, s, base)) return Primality::composite;
    }
    return Primality::probable_prime;
}

inline bool is_prime(const Natural& n) { return classify_prime(n) != Primality::composite; }

struct FactorizeOptions {
    std::uint32_t trial_limit = 1'000'000;   // trial division by primes below this
    std::uint64_t rho_budget = 50'000'000;   // total rho iterations per call
};

/// Complete factorization, ascending primes. `probabilistic` is set when some
/// factor's primality rests on the probabilistic test (factor >= 2^64).
struct PrimeFactorization {
    std::map<Natural, unsigned> factors;
    bool probabilistic = false;

    Natural value() const {
        Natural v = 1;
        for (const auto& [p, e] : factors)
            for (unsigned i = 0; i < e; ++i) v *= p;
        return v;
    }
};

namespace detail {

inline const std::vector<std::uint32_t>& small_primes(std::uint32_t limit) {
    thread_local std::vector<std::uint32_t> primes;
    thread_local std::uint32_t sieved_to = 0;
    if (sieved_to < limit) {
        primes.clear();
        std::vector<bool> comp(limit + 1, false);
        for (std::uint32_t i = 2; i <= limit; ++i) {
            if (!comp[i]) {
                primes.push_back(i);
                for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j <= limit; j += i)
                    comp[static_cast<std::size_t>(j)] = true;
            }
        }
        sieved_to = limit;
    }
    return primes;
}

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b) { a %= b; std::swap(a, b); }
    return a;
}

// Brent's cycle variant of Pollard rho. Deterministic polynomial schedule
// x^2 + c, c = 1, 2, ...; returns 0 when the shared budget runs out.
inline std::uint64_t rho_brent_u64(std::uint64_t n, std::uint64_t& budget) {
    if (n % 2 == 0) return 2;
    for (std::uint64_t c = 1; c < 64; ++c) {
        std::uint64_t y = 2, d = 1, q = 1, x = 0, ys = 0;
        std::uint64_t r = 1;
        while (d == 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = (mulmod64(y, y, n) + c) % n;
            for (std::uint64_t k = 0; k < r && d == 1; k += 128) {
                ys = y;
                const std::uint64_t chunk = std::min<std::uint64_t>(128, r - k);
                if (budget < chunk) return 0;
                budget -= chunk;
                for (std::uint64_t i = 0; i < chunk; ++i) {
                    y = (mulmod64(y, y, n) + c) % n;
                    const std::uint64_t diff = x > y ? x - y : y - x;
                    q = mulmod64(q, diff ? diff : 1, n);
                }
                d = gcd_u64(q, n);
            }
            r <<= 1;
        }
        if (d == n) {
            d = 1;
            while (d == 1) {
                ys = (mulmod64(ys, ys, n) + c) % n;
                const std::uint64_t diff = x > ys ? x - ys : ys - x;
                d = gcd_u64(diff ? diff : 1, n);
            }
        }
        if (d != n && d != 1) return d;
    }
    return 0;
}

inline Natural rho_brent_big(const Natural& n, std::uint64_t& budget) {
    using boost::multiprecision::gcd;
    if (n % 2 == 0) return 2;
    for (std::uint64_t c = 1; c < 64; ++c) {
        Natural y = 2, d = 1, q = 1, x = 0, ys = 0;
        std::uint64_t r = 1;
        while (d == 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = (y * y + c) % n;
            for (std::uint64_t k = 0; k < r && d == 1; k += 128) {
                ys = y;
                const std::uint64_t chunk = std::min<std::uint64_t>(128, r - k);
                if (budget < chunk) return 0;
                budget -= chunk;
                for (std::uint64_t i = 0; i < chunk; ++i) {
                    y = (y * y + c) % n;
                    q = (q * (x > y ? x - y : y - x)) % n;
                    if (q == 0) q = 1;
                }
                d = gcd(q, n);
            }
            r <<= 1;
        }
        if (d == n) {
            d = 1;
            while (d == 1) {
                ys = (ys * ys + c) % n;
                Natural diff = x > ys ? x - ys : ys - x;
                if (diff == 0) diff = 1;
                d = gcd(diff, n);
            }
        }
        if (d != n && d != 1) return d;
    }
    return 0;
}

inline void factor_into(const Natural& n, std::map<Natural, unsigned>& out, bool& probabilistic,
                        std::uint64_t& budget) {
    if (n == 1) return;
    const Primality pr = classify_prime(n);
    if (pr != Primality::composite) {
        if (pr == Primality::probable_prime) probabilistic = true;
        ++out[n];
        return;
    }
    Natural f;
    if (n <= u64_max) {
        f = rho_brent_u64(static_cast<std::uint64_t>(n), budget);
    } else {
        f = rho_brent_big(n, budget);
    }
    if (f == 0) throw ResourceError("factorize: effort cap exceeded on cofactor " + n.str(), n);
    factor_into(f, out, probabilistic, budget);
    factor_into(n / f, out, probabilistic, budget);
}

}  // namespace detail

inline PrimeFactorization factorize(const Natural& n, const FactorizeOptions& opt = {}) {
    if (n < 1) throw std::domain_error("factorize: requires n >= 1");
    PrimeFactorization result;
    Natural rest = n;
    for (std::uint32_t p : detail::small_primes(opt.trial_limit)) {
        if (rest < static_cast<std::uint64_t>(p) * p) break;
        while (rest % p == 0) {
            ++result.factors[Natural(p)];
            rest /= p;
        }
    }
    if (rest > 1) {
        std::uint64_t budget = opt.rho_budget;
        detail::factor_into(rest, result.factors, result.probabilistic, budget);
    }
    return result;
}

namespace detail {

// Scan cap for the modular searches: the Pisano period is below 6n.
inline std::uint64_t scan_cap(const Natural& n) {
    return n > 3'000'000'000'000'000'000 ? u64_max : static_cast<std::uint64_t>(6 * n);
}

// Smallest k in [1, cap] with p | u_k for the given sequence, or 0 if none.
// Modular pair recurrence; u64 arithmetic whenever the modulus allows.
inline std::uint64_t first_divisible_index(SequenceKind kind, const Natural& p, std::uint64_t cap) {
    const bool fib = kind == SequenceKind::fibonacci;
    if (p <= (u64_max >> 1)) {
        const std::uint64_t m = static_cast<std::uint64_t>(p);
        std::uint64_t a = 1 % m;             // u_1
        std::uint64_t b = (fib ? 1 : 3) % m; // u_2
        for (std::uint64_t k = 1; k <= cap; ++k) {
            if (a == 0) return k;
            const std::uint64_t t = a + b >= m ? a + b - m : a + b;
            a = b;
            b = t;
        }
        return 0;
    }
    Natural a = 1, b = fib ? 1 : 3;
    for (std::uint64_t k = 1; k <= cap; ++k) {
        if (a == 0) return k;
        Natural t = (a + b) % p;
        a = b;
        b = std::move(t);
    }
    return 0;
}

}  // namespace detail

/// Rank of apparition: smallest k >= 1 with n | F_k, by modular scan.
inline std::uint64_t zrank(const Natural& n) {
    if (n < 1) throw std::domain_error("zrank: requires n >= 1");
    if (n == 1) return 1;
    const std::uint64_t hit =
        detail::first_divisible_index(SequenceKind::fibonacci, n, detail::scan_cap(n));
    if (hit == 0) throw std::logic_error("zrank: scan cap exceeded");
    return hit;
}

/// Pisano period: smallest P >= 1 with (F_P, F_{P+1}) == (0, 1) mod n.
inline std::uint64_t pisano_period(const Natural& n) {
    if (n < 2) throw std::domain_error("pisano_period: requires n >= 2");
    const std::uint64_t cap = detail::scan_cap(n);
    if (n <= (detail::u64_max >> 1)) {
        const std::uint64_t m = static_cast<std::uint64_t>(n);
        std::uint64_t a = 0, b = 1 % m;
        for (std::uint64_t k = 1; k <= cap; ++k) {
            const std::uint64_t t = a + b >= m ? a + b - m : a + b;
            a = b;
            b = t;  // (a, b) = (F_k, F_{k+1})
            if (a == 0 && b == 1 % m) return k;
        }
    } else {
        Natural a = 0, b = 1;
        for (std::uint64_t k = 1; k <= cap; ++k) {
            Natural t = (a + b) % n;
            a = b;
            b = std::move(t);
            if (a == 0 && b == 1) return k;
        }
    }
    throw std::logic_error("pisano_period: scan cap exceeded");
}

/// Primes p with p | u_n but p dividing none of u_1..u_{n-1}. Computed
/// definitionally (exact divisibility of the stored earlier terms) and
/// cross-checked against the rank-of-apparition characterization, computed by
/// an independent modular scan: Fibonacci primitive <=> z(p) == n; Lucas with
/// p odd <=> z(p) == 2n; Lucas with p == 2 <=> n == 3 (z(2) = 3 is odd, yet
/// 2 | L_{3j}; the first such index >= 1 is 3). Disagreement is a hard error.
inline std::vector<Natural> primitive_divisors(SequenceKind kind, SeqIndex n) {
    if (n < 1) throw std::domain_error("primitive_divisors: requires n >= 1");
    if (n > 200) throw std::out_of_range("primitive_divisors: index above desk-scale cap 200");
    const Natural value = term(kind, n);
    std::vector<Natural> result;
    if (value == 1) return result;
    const PrimeFactorization pf = factorize(value);
    for (const auto& [p, e] : pf.factors) {
        bool divides_earlier = false;
        for (SeqIndex i = 1; i < n && !divides_earlier; ++i) {
            divides_earlier = term(kind, i) % p == 0;
        }
        const bool primitive = !divides_earlier;

        bool by_zrank;
        if (kind == SequenceKind::fibonacci) {
            by_zrank = detail::first_divisible_index(SequenceKind::fibonacci, p,
                                                     static_cast<std::uint64_t>(n)) ==
                       static_cast<std::uint64_t>(n);
        } else if (p == 2) {
            by_zrank = n == 3;
        } else {
            by_zrank = detail::first_divisible_index(SequenceKind::fibonacci, p,
                                                     2 * static_cast<std::uint64_t>(n)) ==
                       2 * static_cast<std::uint64_t>(n);
        }
        if (primitive != by_zrank)
            throw std::logic_error("primitive_divisors: definitional and z(p) characterizations disagree");
        if (primitive) result.push_back(p);
    }
    return result;
}

/// Ward's criterion: an odd prime p with odd z(p) divides no Lucas number.
/// With verify_by_scan the criterion is checked against a full-period sweep
/// of L_n mod p instead of being trusted.
inline bool prime_avoids_lucas(const Natural& p, bool verify_by_scan = false) {
    if (p == 2 || !is_prime(p)) throw std::domain_error("prime_avoids_lucas: requires an odd prime");
    const bool criterion = zrank(p) % 2 == 1;
    if (verify_by_scan) {
        if (p > (detail::u64_max >> 1))
            throw std::out_of_range("prime_avoids_lucas: scan verification needs a desk-scale prime");
        const std::uint64_t period = pisano_period(p);
        bool divides_some = false;
        const std::uint64_t m = static_cast<std::uint64_t>(p);
        std::uint64_t a = 2 % m, b = 1 % m;
        for (std::uint64_t k = 0; k < period; ++k) {
            if (a == 0) { divides_some = true; break; }
            const std::uint64_t t = a + b >= m ? a + b - m : a + b;
            a = b;
            b = t;
        }
        if (criterion == divides_some)
            throw std::logic_error("prime_avoids_lucas: criterion contradicts the period scan");
    }
    return criterion;
}

/// Residue-class rule: prime | F_m^2 + offset  <=>  m mod modulus in residues,
/// with modulus the Pisano period of the prime. Generated, never hard-coded.
struct SieveRule {
    Natural prime;
    std::uint64_t modulus = 0;
    std::vector<std::uint32_t> residues;  // sorted, in [0, modulus)
    Offset offset = Offset::minus_one;

    bool hits(SeqIndex m) const {
        const auto r = static_cast<std::uint32_t>(static_cast<std::uint64_t>(m) % modulus);
        return std::binary_search(residues.begin(), residues.end(), r);
    }
};

inline SieveRule sieve_rule(const Natural& p, Offset offset) {
    if (p < 2) throw std::domain_error("sieve_rule: requires p >= 2");
    SieveRule rule;
    rule.prime = p;
    rule.offset = offset;
    rule.modulus = pisano_period(p);
    if (p < (1ull << 31)) {
        const std::uint64_t m64 = static_cast<std::uint64_t>(p);
        const std::uint64_t want = offset == Offset::minus_one ? 1 % m64 : (m64 - 1) % m64;
        std::uint64_t a = 0, b = 1 % m64;
        for (std::uint64_t m = 0; m < rule.modulus; ++m) {
            if ((a * a) % m64 == want) rule.residues.push_back(static_cast<std::uint32_t>(m));
            const std::uint64_t t = a + b >= m64 ? a + b - m64 : a + b;
            a = b;
            b = t;
        }
    } else {
        Natural a = 0, b = 1;
        for (std::uint64_t m = 0; m < rule.modulus; ++m) {
            Natural v = (a * a + offset_value(offset)) % p;
            if (v < 0) v += p;
            if (v == 0) rule.residues.push_back(static_cast<std::uint32_t>(m));
            Natural t = (a + b) % p;
            a = b;
            b = std::move(t);
        }
    }
    return rule;
}

/// False iff some rule's prime divides F_m^2 + offset: such m cannot yield a
/// Lucas-product solution. All rules must share one offset.
inline bool sieve_admissible(SeqIndex m, const std::vector<SieveRule>& rules) {
    if (m < 0) throw std::domain_error("sieve_admissible: requires m >= 0");
    for (const auto& r : rules) {
        if (r.offset != rules.front().offset)
            throw std::invalid_argument("sieve_admissible: rules mix offsets");
    }
    for (const auto& r : rules) {
        if (r.hits(m)) return false;
    }
    return true;
}

/// Floor integer square root: isqrt(x)^2 <= x < (isqrt(x)+1)^2.
inline Natural isqrt(const Natural& n) {
    if (n < 0) throw std::domain_error("isqrt: requires n >= 0");
    return boost::multiprecision::sqrt(n);
}

}  // namespace fibluc
