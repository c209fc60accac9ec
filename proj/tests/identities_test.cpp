#include "fibluc/identities.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace fibluc;

namespace {
constexpr auto F = SequenceKind::fibonacci;
constexpr auto L = SequenceKind::lucas;

Natural sq(SequenceKind k, SeqIndex m) {
    const Natural t = term(k, m);
    return t * t;
}
}

TEST_CASE("shift identity fixtures") {
    CHECK(shift_identity_check(5, 1));   // F_4 F_6 = 24 = 25 + (-1)^5
    CHECK(shift_identity_check(0, 0));
    CHECK(shift_identity_check(-7, 3));
    CHECK(shift_identity_check(3, 8));
    CHECK(shift_identity_check(-12, -5));
}

TEST_CASE("shift identity over the signed box |m|, |k| <= 120") {
    for (SeqIndex m = -120; m <= 120; ++m) {
        for (SeqIndex k = -120; k <= 120; ++k) {
            REQUIRE(shift_identity_check(m, k));
        }
    }
}

TEST_CASE("factor_fib_square index selection") {
    const auto a = factor_fib_square(5, Offset::minus_one);
    CHECK(a.lower_index == 4);
    CHECK(a.upper_index == 6);
    CHECK(a.value() == 24);

    const auto b = factor_fib_square(4, Offset::minus_one);
    CHECK(b.lower_index == 2);
    CHECK(b.upper_index == 6);
    CHECK(b.value() == 8);

    const auto c = factor_fib_square(4, Offset::plus_one);
    CHECK(c.lower_index == 3);
    CHECK(c.upper_index == 5);
    CHECK(c.value() == 10);

    // m = 1 with +1 resolves through the signed extension: F_{-1} F_3 = 2.
    const auto d = factor_fib_square(1, Offset::plus_one);
    CHECK(d.lower_index == -1);
    CHECK(d.upper_index == 3);
    CHECK(d.value() == 2);

    CHECK_THROWS_AS(factor_fib_square(0, Offset::minus_one), std::domain_error);
}

TEST_CASE("factor_lucas_square form selection") {
    const auto a = factor_lucas_square(2, Offset::minus_one);
    REQUIRE(a.form == LucasSquareFactorization::Form::quotient);
    CHECK(a.numerator_index() == 6);
    CHECK(a.denominator_index() == 2);
    CHECK(a.value() == 8);

    const auto b = factor_lucas_square(3, Offset::minus_one);
    REQUIRE(b.form == LucasSquareFactorization::Form::five_times);
    CHECK(b.lower_index() == 2);
    CHECK(b.upper_index() == 4);
    CHECK(b.value() == 15);

    const auto c = factor_lucas_square(2, Offset::plus_one);
    REQUIRE(c.form == LucasSquareFactorization::Form::five_times);
    CHECK(c.lower_index() == 1);
    CHECK(c.upper_index() == 3);
    CHECK(c.value() == 10);

    CHECK_THROWS_AS(factor_lucas_square(0, Offset::plus_one), std::domain_error);
}

TEST_CASE("square-offset factorizations are exact for 1 <= m <= 300") {
    for (SeqIndex m = 1; m <= 300; ++m) {
        for (Offset off : {Offset::minus_one, Offset::plus_one}) {
            REQUIRE(factor_fib_square(m, off).value() == BigInt(sq(F, m)) + offset_value(off));
            REQUIRE(BigInt(factor_lucas_square(m, off).value()) ==
                    BigInt(sq(L, m)) + offset_value(off));
        }
    }
}

TEST_CASE("quotient form divides exactly") {
    for (SeqIndex m = 1; m <= 300; ++m) {
        for (Offset off : {Offset::minus_one, Offset::plus_one}) {
            const auto f = factor_lucas_square(m, off);
            if (f.form == LucasSquareFactorization::Form::quotient) {
                REQUIRE(term(F, f.numerator_index()) % term(F, f.denominator_index()) == 0);
            }
        }
    }
}

TEST_CASE("parity offsets") {
    CHECK(parity_offsets(5).epsilon == 1);
    CHECK(parity_offsets(5).delta == 2);
    CHECK(parity_offsets(4).epsilon == 2);
    CHECK(parity_offsets(4).delta == 1);
    CHECK(parity_offsets(0).epsilon == 2);
    CHECK(parity_offsets(0).delta == 1);
    for (SeqIndex m = 0; m <= 50; ++m) {
        const auto po = parity_offsets(m);
        REQUIRE(po.epsilon + po.delta == 3);
    }
}

TEST_CASE("parametric family identities over their stated ranges") {
    for (SeqIndex m = 3; m <= 199; m += 2) {  // odd: F_5 F_{m-1} F_{m+1} + 1 = L_m^2
        REQUIRE(term(F, 5) * term(F, m - 1) * term(F, m + 1) + 1 == sq(L, m));
    }
    for (SeqIndex m = 2; m <= 200; m += 2) {  // even: F_5 F_{m-1} F_{m+1} - 1 = L_m^2
        REQUIRE(term(F, 5) * term(F, m - 1) * term(F, m + 1) - 1 == sq(L, m));
    }
    for (SeqIndex m = 4; m <= 200; ++m) {     // F_{m-delta} F_{m+delta} - 1 = F_m^2
        const int d = parity_offsets(m).delta;
        REQUIRE(term(F, m - d) * term(F, m + d) - 1 == sq(F, m));
    }
    for (SeqIndex m = 5; m <= 200; ++m) {     // F_{m-eps} F_{m+eps} + 1 = F_m^2
        const int e = parity_offsets(m).epsilon;
        REQUIRE(term(F, m - e) * term(F, m + e) + 1 == sq(F, m));
    }
}
