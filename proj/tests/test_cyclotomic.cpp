#include "cyclotomic.hpp"
#include "doctest.h"

using namespace thd;

TEST_CASE("rationals") {
    Rat a(1, 6), b(-1, 30);
    CHECK((a + b) == Rat(2, 15));
    CHECK((a * b) == Rat(-1, 180));
    CHECK((a / b) == Rat(-5));
    CHECK(Rat(7, -14) == Rat(-1, 2));
    CHECK(Rat(-1, 240).valuation(5) == -1);
    CHECK(Rat(250, 3).valuation(5) == 3);
    CHECK(Rat(7, 3).mod_p(5) == 4);  // 7 * 3^{-1} = 2 * 2 = 4 mod 5
    CHECK_THROWS_WITH_AS(Rat(1, 5).mod_p(5), doctest::Contains("PDividesDenominator"), Error);
    CHECK(Rat(1, 240).times_ppow(5, 1) == Rat(1, 48));
}

TEST_CASE("bernoulli numbers") {
    CHECK(bernoulli_number(0) == Rat(1));
    CHECK(bernoulli_number(1) == Rat(-1, 2));
    CHECK(bernoulli_number(2) == Rat(1, 6));
    CHECK(bernoulli_number(3) == Rat(0));
    CHECK(bernoulli_number(4) == Rat(-1, 30));
    CHECK(bernoulli_number(6) == Rat(1, 42));
    CHECK(bernoulli_number(12) == Rat(-691, 2730));
}

TEST_CASE("cyclotomic polynomials") {
    auto C12 = CycCtx::make(12);
    // Phi_12 = x^4 - x^2 + 1
    REQUIRE(C12->modulus().size() == 5);
    CHECK(C12->modulus()[0] == Rat(1));
    CHECK(C12->modulus()[1] == Rat(0));
    CHECK(C12->modulus()[2] == Rat(-1));
    CHECK(C12->modulus()[3] == Rat(0));
    CHECK(C12->modulus()[4] == Rat(1));

    auto C23 = CycCtx::make(23);
    CHECK(C23->degree() == 22);
    for (auto& c : C23->modulus()) CHECK(c == Rat(1));

    auto C2 = CycCtx::make(2);
    CHECK(C2->degree() == 1);
}

TEST_CASE("cyclotomic arithmetic") {
    auto C5 = CycCtx::make(5);
    auto z = C5->zeta_pow(1);
    CHECK((z * C5->zeta_pow(4)) == C5->one());
    // 1 + z + z^2 + z^3 + z^4 = 0
    auto s = C5->one() + z + C5->zeta_pow(2) + C5->zeta_pow(3) + C5->zeta_pow(4);
    CHECK(s.is_zero());
    // z^7 = z^2
    CHECK(C5->zeta_pow(7) == C5->zeta_pow(2));
}

TEST_CASE("cyclotomic reduction to finite fields") {
    auto C4 = CycCtx::make(4);
    auto F5 = FieldCtx::make(5, 1);
    // zeta_4 -> 2 (primitive element 2 of F_5 raised to (5-1)/4 = 1)
    CHECK(C4->zeta_pow(1).reduce(F5) == F5->from_int(2));
    CHECK(C4->zeta_pow(2).reduce(F5) == F5->from_int(4));
    // i^2 = -1 survives reduction
    auto i2 = C4->zeta_pow(1) * C4->zeta_pow(1);
    CHECK(i2.reduce(F5) == F5->from_int(-1));

    auto C22 = CycCtx::make(22);
    auto F55 = FieldCtx::make(5, 5);
    auto z = C22->zeta_pow(1).reduce(F55);
    CHECK(z.pow(22) == F55->one());
    CHECK(z.pow(11) != F55->one());
    CHECK(z.pow(2) != F55->one());

    CHECK_THROWS_WITH_AS(C22->zeta_pow(1).reduce(F5), doctest::Contains("FieldTooSmall"), Error);
    auto C10 = CycCtx::make(10);
    CHECK_THROWS_WITH_AS(C10->zeta_pow(1).reduce(F5), doctest::Contains("UsageError"), Error);
}
