#include "doctest.h"
#include "ff.hpp"

using namespace thd;

TEST_CASE("field construction and canonical modulus") {
    auto F5 = FieldCtx::make(5, 1);
    CHECK(F5->q() == 5);
    CHECK(F5->modulus() == std::vector<uint32_t>{0, 1});

    // First irreducible monic quadratic over F_5 in canonical order is x^2 + 2:
    // x^2 (value 0) and x^2+1 (value 1, roots +-2) are reducible.
    auto F25 = FieldCtx::make(5, 2);
    CHECK(F25->q() == 25);
    CHECK(F25->modulus() == std::vector<uint32_t>{2, 0, 1});

    auto F49 = FieldCtx::make(7, 2);
    CHECK(F49->q() == 49);

    CHECK_THROWS_WITH_AS(FieldCtx::make(6, 1), doctest::Contains("NotPrime"), Error);
    CHECK_THROWS_WITH_AS(FieldCtx::make(3, 1), doctest::Contains("UnsupportedCharacteristic"), Error);
    CHECK_THROWS_WITH_AS(FieldCtx::make(5, 9), doctest::Contains("DegreeTooLarge"), Error);
    CHECK_THROWS_WITH_AS(FieldCtx::make(5, 0), doctest::Contains("DegreeTooLarge"), Error);

    // Internal fields allow large degree.
    auto big = FieldCtx::make_internal(5, 22);
    CHECK(big->r() == 22);
    uint64_t q = 1;
    for (int i = 0; i < 22; ++i) q *= 5;
    CHECK(big->q() == q);
}

TEST_CASE("prime field arithmetic") {
    auto F5 = FieldCtx::make(5, 1);
    auto a = F5->from_int(3), b = F5->from_int(4);
    CHECK((a * b) == F5->from_int(2));
    CHECK((a + b) == F5->from_int(2));
    CHECK((a - b) == F5->from_int(4));
    CHECK(F5->from_int(2).inv() == F5->from_int(3));
    CHECK(F5->from_int(-1) == F5->from_int(4));
    CHECK_THROWS_WITH_AS(F5->zero().inv(), doctest::Contains("DivisionByZero"), Error);
}

TEST_CASE("extension field arithmetic") {
    auto F25 = FieldCtx::make(5, 2);
    auto x = F25->gen();
    // x^2 = -2 = 3 modulo x^2 + 2
    CHECK((x * x) == F25->from_int(3));
    // Every nonzero element has a working inverse.
    for (uint64_t v = 1; v < 25; ++v) {
        auto a = F25->from_canonical_uint(v);
        CHECK((a * a.inv()) == F25->one());
    }
    // Distributivity spot-check over all pairs.
    for (uint64_t u = 0; u < 25; ++u) {
        auto a = F25->from_canonical_uint(u);
        auto b = F25->from_canonical_uint((u * 7 + 3) % 25);
        auto c = F25->from_canonical_uint((u * 11 + 1) % 25);
        CHECK((a * (b + c)) == (a * b + a * c));
    }
}

TEST_CASE("frobenius") {
    auto F25 = FieldCtx::make(5, 2);
    for (uint64_t v = 0; v < 25; ++v) {
        auto a = F25->from_canonical_uint(v);
        CHECK(a.frobenius().frobenius() == a);   // order 2
        CHECK(a.pow(25) == a);                   // q-th power identity
        auto b = F25->from_canonical_uint((v * 13 + 2) % 25);
        CHECK((a * b).frobenius() == a.frobenius() * b.frobenius());
        CHECK((a + b).frobenius() == a.frobenius() + b.frobenius());
    }
    // Frobenius fixes exactly the prime subfield.
    int fixed = 0;
    for (uint64_t v = 0; v < 25; ++v) {
        auto a = F25->from_canonical_uint(v);
        if (a.frobenius() == a) ++fixed;
    }
    CHECK(fixed == 5);
}

TEST_CASE("primitive elements and roots of unity") {
    auto F5 = FieldCtx::make(5, 1);
    CHECK(F5->primitive_element() == F5->from_int(2));

    auto F23 = FieldCtx::make_internal(23, 1);
    CHECK(F23->primitive_element() == F23->from_int(5));

    auto F25 = FieldCtx::make(5, 2);
    auto z3 = F25->root_of_unity(3);
    CHECK(z3 != F25->one());
    CHECK(z3.pow(3) == F25->one());
    auto z24 = F25->root_of_unity(24);
    CHECK(z24.pow(24) == F25->one());
    CHECK(z24.pow(12) != F25->one());
    CHECK(z24.pow(8) != F25->one());

    CHECK_THROWS_WITH_AS(F5->root_of_unity(11), doctest::Contains("FieldTooSmall"), Error);

    // Order-11 roots exist in F_{5^5}: 5^5 - 1 = 3124 = 4 * 11 * 71.
    auto F55 = FieldCtx::make(5, 5);
    auto z11 = F55->root_of_unity(11);
    CHECK(z11.pow(11) == F55->one());
    CHECK(z11 != F55->one());
}

TEST_CASE("polynomial roots") {
    auto F5 = FieldCtx::make(5, 1);
    // x^2 + 1 over F_5: roots 2 and 3.
    std::vector<Fq> p1 = {F5->one(), F5->zero(), F5->one()};
    auto r1 = poly_roots(F5, p1);
    REQUIRE(r1.size() == 2);
    CHECK(r1[0] == F5->from_int(2));
    CHECK(r1[1] == F5->from_int(3));
    // x^2 + 2 over F_5: no roots.
    std::vector<Fq> p2 = {F5->from_int(2), F5->zero(), F5->one()};
    CHECK(poly_roots(F5, p2).empty());
    // Same quadratic over F_25 picks up the two F_5 roots only.
    auto F25 = FieldCtx::make(5, 2);
    std::vector<Fq> p3 = {F25->one(), F25->zero(), F25->one()};
    CHECK(poly_roots(F25, p3).size() == 2);
    // x^2 + 2 acquires its roots in F_25.
    std::vector<Fq> p4 = {F25->from_int(2), F25->zero(), F25->one()};
    CHECK(poly_roots(F25, p4).size() == 2);
}

TEST_CASE("context mismatch") {
    auto F5 = FieldCtx::make(5, 1);
    auto F7 = FieldCtx::make(7, 1);
    CHECK_THROWS_WITH_AS(F5->one() + F7->one(), doctest::Contains("ContextMismatch"), Error);
    // Two independently built contexts over the same field interoperate.
    auto F5b = FieldCtx::make(5, 1);
    CHECK((F5->from_int(2) + F5b->from_int(4)) == F5->one());
}

TEST_CASE("byte codec") {
    auto F25 = FieldCtx::make(5, 2);
    uint8_t buf[2];
    for (uint64_t v = 0; v < 25; ++v) {
        auto a = F25->from_canonical_uint(v);
        F25->encode(a, buf);
        CHECK(F25->decode(buf) == a);
    }
    uint8_t bad[2] = {7, 0};
    CHECK_THROWS_WITH_AS(F25->decode(bad), doctest::Contains("CacheError"), Error);
}
