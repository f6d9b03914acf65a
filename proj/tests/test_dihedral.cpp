#include "dihedral.hpp"

#include <vector>

#include "doctest.h"
#include "eisbasis.hpp"

using namespace thd;

namespace {

// q * prod(1 - q^n) * prod(1 - q^{23n}), exact integer coefficients.
std::vector<int64_t> eta_eta23(uint32_t prec) {
    std::vector<int64_t> p1(prec, 0), p23(prec, 0);
    p1[0] = 1;
    p23[0] = 1;
    for (uint32_t n = 1; n < prec; ++n)
        for (uint32_t i = prec; i-- > n;) p1[i] -= p1[i - n];
    for (uint32_t n = 23; n < prec; n += 23)
        for (uint32_t i = prec; i-- > n;) p23[i] -= p23[i - n];
    std::vector<int64_t> out(prec, 0);
    for (uint32_t i = 0; i < prec; ++i) {
        if (!p1[i]) continue;
        for (uint32_t j = 0; i + j + 1 < prec; ++j)
            if (p23[j]) out[i + j + 1] += p1[i] * p23[j];
    }
    return out;
}

}  // namespace

TEST_CASE("reduced form enumeration") {
    auto f23 = reduced_forms(-23);
    REQUIRE(f23.size() == 3);
    CHECK(f23[0] == QuadForm{1, 1, 6});
    CHECK(f23[1] == QuadForm{2, 1, 3});
    CHECK(f23[2] == QuadForm{2, -1, 3});

    auto f47 = reduced_forms(-47);
    REQUIRE(f47.size() == 5);
    CHECK(f47[0] == QuadForm{1, 1, 12});
    CHECK(f47[1] == QuadForm{2, 1, 6});
    CHECK(f47[2] == QuadForm{2, -1, 6});
    CHECK(f47[3] == QuadForm{3, 1, 4});
    CHECK(f47[4] == QuadForm{3, -1, 4});

    CHECK(reduced_forms(-3).size() == 1);
    CHECK(reduced_forms(-4) == std::vector<QuadForm>{{1, 0, 1}});
    CHECK_THROWS_AS(reduced_forms(-12), Error);  // 4 * (-3): not fundamental
    CHECK_THROWS_AS(reduced_forms(5), Error);
}

TEST_CASE("theta counts") {
    auto r = theta_counts({1, 1, 6}, 10);
    CHECK(r[0] == 1);
    CHECK(r[1] == 2);  // (+-1, 0)
    CHECK(r[6] == 4);  // (0, +-1), (-1, 1), (1, -1)
    CHECK(r[8] == 4);  // (1, 1), (2, -1) and their negatives
    auto s = theta_counts({2, 1, 3}, 10);
    CHECK(s[0] == 1);
    CHECK(s[1] == 0);
    CHECK(s[2] == 2);   // (+-1, 0)
    CHECK(s[3] == 2);   // (0, +-1)
    CHECK_THROWS_AS(theta_counts({1, 5, 1}, 10), Error);  // indefinite
}

TEST_CASE("level-23 dihedral form matches the eta product") {
    auto a = dihedral_coeffs_23(500);
    auto e = eta_eta23(500);
    for (uint32_t n = 0; n < 500; ++n) {
        CAPTURE(n);
        CHECK(a[n] == e[n]);
    }
}

TEST_CASE("level-23 dihedral prime coefficients") {
    auto a = dihedral_coeffs_23(102);
    CHECK(a[1] == 1);
    CHECK(a[2] == -1);
    CHECK(a[3] == -1);
    CHECK(a[5] == 0);
    CHECK(a[7] == 0);
    CHECK(a[11] == 0);
    CHECK(a[13] == -1);
    CHECK(a[23] == 1);
    CHECK(a[59] == 2);
    CHECK(a[101] == 2);
}

TEST_CASE("class polynomials carry their pinned discriminants") {
    CHECK(class_poly(-23) == std::vector<int64_t>{-1, -1, 0, 1});
    CHECK(class_poly(-47) == std::vector<int64_t>{1, 0, -1, 2, -2, 1});
    CHECK_THROWS_AS(class_poly(-31), Error);  // h(-31) = 3 but no table
}

TEST_CASE("dihedral reductions") {
    auto F5 = FieldCtx::make(5, 1);

    // D = -23 reduction agrees with the exact integer coefficients
    QExpansion f = weight_one_dihedral(-23, F5, 100);
    auto a = dihedral_coeffs_23(100);
    for (uint32_t n = 0; n < 100; ++n) CHECK(f.coeff(n) == F5->from_int(a[n]));

    // D = -47 at p = 5 degenerates onto the weight-one Eisenstein series:
    // the class character dies at the ramified prime, so half the sum of
    // all class thetas remains, which is the divisor-sum series.
    QExpansion g = weight_one_dihedral(-47, F5, 200);
    auto triv1 = DirichletChar::trivial(std::make_shared<UnitGroup>(1));
    auto chi47 = DirichletChar::parse(std::make_shared<UnitGroup>(47), "47:23");
    QExpansion e1 = eisenstein_qexp(triv1, chi47, 1, 200, F5);
    CHECK(g == e1);

    // away from 5 the two variants are genuine Galois conjugates
    auto F11 = FieldCtx::make(11, 1);
    QExpansion v1 = weight_one_dihedral(-47, F11, 50, 1);
    QExpansion v2 = weight_one_dihedral(-47, F11, 50, 2);
    CHECK(v1.coeff(0).is_zero());
    CHECK(v1.coeff(1) == F11->one());
    CHECK(v2.coeff(1) == F11->one());
    CHECK(v1 != v2);
    CHECK_THROWS_AS(weight_one_dihedral(-47, F11, 50, 3), Error);
    CHECK_THROWS_AS(weight_one_dihedral(-31, F5, 10), Error);
}
