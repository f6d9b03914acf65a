#include "doctest.h"

#include "matfq.hpp"

using namespace thd;

namespace {

MatFq from_ints(const Ctx& F, size_t rows, size_t cols, const std::vector<int64_t>& v) {
    MatFq m(F, rows, cols);
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) m.set_int(i, j, v[i * cols + j]);
    return m;
}

}  // namespace

TEST_CASE("matrix arithmetic over F5") {
    auto F = FieldCtx::make(5, 1);
    MatFq a = from_ints(F, 2, 2, {1, 2, 3, 4});
    MatFq b = from_ints(F, 2, 2, {0, 1, 1, 0});
    CHECK(a + b == from_ints(F, 2, 2, {1, 3, 4, 4}));
    CHECK(a - b == from_ints(F, 2, 2, {1, 1, 2, 4}));
    CHECK(a * b == from_ints(F, 2, 2, {2, 1, 4, 3}));
    CHECK(a * MatFq::identity(F, 2) == a);
    CHECK(MatFq::identity(F, 2) * a == a);
    CHECK(a.transpose() == from_ints(F, 2, 2, {1, 3, 2, 4}));
    CHECK(a.scaled(F->from_int(2)) == from_ints(F, 2, 2, {2, 4, 1, 3}));
    CHECK(a.pow(0) == MatFq::identity(F, 2));
    CHECK(a.pow(3) == a * a * a);
    CHECK_THROWS_WITH_AS(a * MatFq(F, 3, 2), doctest::Contains("UsageError"), Error);
    auto F7 = FieldCtx::make(7, 1);
    CHECK_THROWS_WITH_AS(a + MatFq(F7, 2, 2), doctest::Contains("ContextMismatch"), Error);
}

TEST_CASE("rref, rank and nullspace over F5") {
    auto F = FieldCtx::make(5, 1);
    MatFq a = from_ints(F, 2, 2, {1, 2, 3, 4});
    CHECK(a.rank() == 2);
    CHECK(a.nullspace().cols() == 0);

    MatFq s = from_ints(F, 2, 2, {1, 2, 2, 4});
    CHECK(s.rank() == 1);
    MatFq k = s.nullspace();
    REQUIRE(k.cols() == 1);
    CHECK(k.at(0, 0).canonical_uint() == 3);  // kernel spanned by (3, 1)
    CHECK(k.at(1, 0).canonical_uint() == 1);
    CHECK((s * k).is_zero());

    MatFq r = from_ints(F, 3, 4, {1, 2, 3, 4, 2, 4, 1, 3, 0, 0, 1, 1});
    MatFq rr = r;
    auto piv = rr.rref_in_place();
    CHECK(piv == std::vector<size_t>{0, 2});
    MatFq kr = r.nullspace();
    CHECK(kr.cols() == 2);
    CHECK((r * kr).is_zero());
}

TEST_CASE("linear solve semantics") {
    auto F = FieldCtx::make(5, 1);
    MatFq a = from_ints(F, 2, 2, {1, 2, 3, 4});
    MatFq b = from_ints(F, 2, 1, {0, 1});
    MatFq x = a.solve(b);
    CHECK(x == from_ints(F, 2, 1, {1, 2}));
    CHECK(a * x == b);

    MatFq s = from_ints(F, 2, 2, {1, 2, 2, 4});
    CHECK_THROWS_WITH_AS(s.solve(from_ints(F, 2, 1, {1, 3})), doctest::Contains("NotInSpan"), Error);
    CHECK_THROWS_WITH_AS(s.solve(from_ints(F, 2, 1, {1, 2})), doctest::Contains("AmbiguousSolve"),
                         Error);
    // Rectangular, overdetermined but consistent: unique solution recovered.
    MatFq tall = from_ints(F, 3, 2, {1, 0, 0, 1, 1, 1});
    MatFq rhs = from_ints(F, 3, 1, {2, 3, 0});
    CHECK(tall.solve(rhs) == from_ints(F, 2, 1, {2, 3}));
}

TEST_CASE("characteristic polynomials") {
    auto F = FieldCtx::make(5, 1);
    // Companion matrix of x^3 + 2x + 1.
    MatFq c = from_ints(F, 3, 3, {0, 0, -1, 1, 0, -2, 0, 1, 0});
    auto cp = c.charpoly();
    REQUIRE(cp.size() == 4);
    CHECK(cp[0].canonical_uint() == 1);
    CHECK(cp[1].canonical_uint() == 2);
    CHECK(cp[2].canonical_uint() == 0);
    CHECK(cp[3].canonical_uint() == 1);

    MatFq swap2 = from_ints(F, 2, 2, {0, 1, 1, 0});
    auto sp = swap2.charpoly();  // x^2 - 1
    CHECK(sp[0].canonical_uint() == 4);
    CHECK(sp[1].canonical_uint() == 0);
    CHECK(sp[2].canonical_uint() == 1);

    MatFq ublock = from_ints(F, 2, 2, {2, 1, -1, 0});
    auto up = ublock.charpoly();  // (x - 1)^2
    CHECK(up[0].canonical_uint() == 1);
    CHECK(up[1].canonical_uint() == 3);
    CHECK(up[2].canonical_uint() == 1);

    MatFq d = from_ints(F, 3, 3, {1, 0, 0, 0, 2, 0, 0, 0, 3});
    auto dp = d.charpoly();  // (x-1)(x-2)(x-3) = x^3 + 4x^2 + x + 4 mod 5
    CHECK(dp[0].canonical_uint() == 4);
    CHECK(dp[1].canonical_uint() == 1);
    CHECK(dp[2].canonical_uint() == 4);
    CHECK(dp[3].canonical_uint() == 1);

    // A matrix needing a row/column swap during the Hessenberg reduction.
    MatFq sw = from_ints(F, 3, 3, {2, 1, 0, 0, 0, 1, 1, 0, 0});
    auto swp = sw.charpoly();  // det(xI - M) = x^3 - 2x^2 - 1
    CHECK(swp[0].canonical_uint() == 4);
    CHECK(swp[1].canonical_uint() == 0);
    CHECK(swp[2].canonical_uint() == 3);
    CHECK(swp[3].canonical_uint() == 1);
}

TEST_CASE("generalized kernels separate semisimple from nilpotent behaviour") {
    auto F = FieldCtx::make(5, 1);
    // (M - I) for the order-two block: plain kernel is one-dimensional but
    // (M - I)^2 = 0, so the generalized kernel is the whole plane.
    MatFq m = from_ints(F, 2, 2, {2, 1, -1, 0});
    MatFq shifted = m - MatFq::identity(F, 2);
    CHECK(shifted.nullspace().cols() == 1);
    CHECK((shifted * shifted).is_zero());
    size_t power = 0;
    MatFq gk = shifted.generalized_nullspace(&power);
    CHECK(gk.cols() == 2);
    CHECK(power == 2);

    // Diagonalizable case: generalized kernel equals the plain kernel.
    MatFq diag = from_ints(F, 2, 2, {0, 0, 0, 1});
    size_t dpower = 7;
    CHECK(diag.generalized_nullspace(&dpower).cols() == 1);
    CHECK(dpower == 1);

    // Nilpotent Jordan block of size 3: kernel grows over three powers.
    MatFq nil = from_ints(F, 3, 3, {0, 1, 0, 0, 0, 1, 0, 0, 0});
    CHECK(nil.nullspace().cols() == 1);
    CHECK(nil.generalized_nullspace().cols() == 3);
}

TEST_CASE("matrices over an extension field") {
    auto F25 = FieldCtx::make(5, 2);
    Fq x = F25->gen();
    MatFq m(F25, 2, 2);
    m.set(0, 0, x);
    m.set(0, 1, F25->one());
    m.set(1, 1, x);
    auto cp = m.charpoly();  // (X - x)^2 = X^2 - 2x X + x^2
    CHECK(cp[2] == F25->one());
    CHECK(cp[1] == -(x + x));
    CHECK(cp[0] == x * x);
    CHECK(m.rank() == 2);
    MatFq shifted = m - MatFq::identity(F25, 2).scaled(x);
    CHECK(shifted.nullspace().cols() == 1);
    CHECK(shifted.generalized_nullspace().cols() == 2);
    MatFq b(F25, 2, 1);
    b.set(0, 0, x * x);
    b.set(1, 0, x);
    MatFq sol = m.solve(b);
    CHECK(m * sol == b);
}

TEST_CASE("column selection and concatenation") {
    auto F = FieldCtx::make(5, 1);
    MatFq a = from_ints(F, 2, 3, {1, 2, 3, 4, 0, 1});
    MatFq sel = a.columns({2, 0});
    CHECK(sel == from_ints(F, 2, 2, {3, 1, 1, 4}));
    MatFq cat = MatFq::hcat(a.columns({0}), a.columns({1}));
    CHECK(cat == a.columns({0, 1}));
}
