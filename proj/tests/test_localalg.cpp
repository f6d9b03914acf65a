#include "localalg.hpp"

#include <random>

#include "components.hpp"
#include "doctest.h"
#include "eisbasis.hpp"

using namespace thd;

namespace {

std::shared_ptr<UnitGroup> grp(uint64_t N) { return std::make_shared<UnitGroup>(N); }

Eigensystem dihedral23_eigen(const Ctx& F) {
    Eigensystem e;
    e.set_anaemic(2, F->from_int(-1));
    e.set_anaemic(3, F->from_int(-1));
    e.set_anaemic(7, F->zero());
    e.set_anaemic(11, F->zero());
    return e;
}

}  // namespace

TEST_CASE("algebra closure, characters and torsion on small matrices") {
    auto F = FieldCtx::make(5, 1);
    MatFq id = MatFq::identity(F, 2);

    // the length-one algebra: identity alone
    auto triv = FiniteAlgebra::closure(F, 2, {});
    CHECK(triv.length() == 1);
    CHECK(triv.is_local());
    CHECK(triv.basis()[0] == id);
    // no maximal-ideal generators: the whole ambient module is torsion
    CHECK(m_torsion_dim(triv) == 2);
    // its regular module is one-dimensional
    auto one = FiniteAlgebra::closure(F, 1, {});
    CHECK(m_torsion_dim(one) == 1);

    // k[n]/n^2 via a nilpotent generator
    MatFq n(F, 2, 2);
    n.set_int(0, 1, 1);
    auto nil = FiniteAlgebra::closure(F, 2, {n});
    CHECK(nil.length() == 2);
    CHECK(nil.is_local());
    CHECK(nil.characters()[0][0].is_zero());
    CHECK(nil.contains(n));
    CHECK(m_torsion_dim(nil) == 1);
    // the regular module keeps a one-dimensional socle
    auto reg = FiniteAlgebra::closure(F, 2, nil.regular_gens());
    CHECK(reg.length() == 2);
    CHECK(m_torsion_dim(reg) == 1);

    // coordinates roundtrip
    MatFq elem = n + id.scaled(F->from_int(3));
    CHECK(nil.combine(nil.coordinates(elem)) == elem);

    // split semisimple pair of characters
    MatFq d(F, 2, 2);
    d.set_int(0, 0, 1);
    d.set_int(1, 1, 2);
    auto diag = FiniteAlgebra::closure(F, 2, {d});
    CHECK(diag.length() == 2);
    REQUIRE(diag.characters().size() == 2);
    CHECK(diag.characters()[0][0].canonical_uint() == 1);
    CHECK(diag.characters()[1][0].canonical_uint() == 2);
    CHECK(m_torsion_dim(diag, 0) == 1);
    CHECK(m_torsion_dim(diag, 1) == 1);
    try {
        m_torsion_dim(diag);  // semi-local: a maximal ideal must be chosen
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UsageError);
    }

    // refusals
    MatFq e10(F, 2, 2);
    e10.set_int(1, 0, 1);
    try {
        FiniteAlgebra::closure(F, 2, {n, e10});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonCommuting);
    }
    MatFq sq(F, 2, 2);  // X^2 = 2, no root mod 5
    sq.set_int(0, 1, 1);
    sq.set_int(1, 0, 2);
    try {
        FiniteAlgebra::closure(F, 2, {sq});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::FieldTooSmall);
    }
    CHECK(!nil.contains(e10));
    CHECK_THROWS_AS(nil.coordinates(e10), Error);
    auto F7 = FieldCtx::make(7, 1);
    CHECK_THROWS_AS(FiniteAlgebra::closure(F, 2, {MatFq::identity(F7, 2)}), Error);
}

TEST_CASE("annihilators, quotient lengths and representatives") {
    auto F = FieldCtx::make(5, 1);
    MatFq id = MatFq::identity(F, 2);
    MatFq n(F, 2, 2);
    n.set_int(0, 1, 1);
    auto nil = FiniteAlgebra::closure(F, 2, {n});
    auto triv = FiniteAlgebra::closure(F, 2, {});

    // sub = amb: everything annihilates the zero quotient
    auto full = annihilator_of_quotient(nil, nil);
    CHECK(full.size() == nil.length());

    // scalars inside k[n]/n^2: c * n must stay scalar, so J = 0
    auto j = annihilator_of_quotient(triv, nil);
    CHECK(j.empty());
    CHECK(quotient_length(triv, j) == 1);

    // a diagonal algebra is no subalgebra of k[n]/n^2
    MatFq d(F, 2, 2);
    d.set_int(0, 0, 1);
    d.set_int(1, 1, 2);
    auto diag = FiniteAlgebra::closure(F, 2, {d});
    try {
        annihilator_of_quotient(diag, nil);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotSubalgebra);
    }

    // annihilator of a submodule: n kills the pivot line, nothing kills the
    // complement
    MatFq e1(F, 2, 1);
    e1.set_int(0, 0, 1);
    auto ann1 = annihilator_of_submodule(nil, e1);
    REQUIRE(ann1.size() == 1);
    CHECK(ann1[0] == n);
    CHECK(quotient_length(nil, ann1) == 1);
    MatFq e2(F, 2, 1);
    e2.set_int(1, 0, 1);
    CHECK(annihilator_of_submodule(nil, e2).empty());

    // quotient data validation
    CHECK_THROWS_AS(quotient_length(nil, {e1 * e1.transpose()}), Error);  // outside
    CHECK_THROWS_AS(quotient_length(nil, {n, n}), Error);                 // dependent
    auto reps = quotient_representatives(nil, ann1);
    REQUIRE(reps.size() == 1);
    CHECK(reps[0] == id);

    // simultaneous kernels
    CHECK(simultaneous_kernel(F, 2, {}).cols() == 2);
    CHECK(simultaneous_kernel(F, 2, {n}).cols() == 1);
    CHECK(simultaneous_kernel(F, 2, {n, d}).cols() == 0);
}

TEST_CASE("hecke algebras double on the dihedral block") {
    auto sp = ModFormSpace::build(5, 23, 5, "23:11", 122, "");
    const Ctx& F = sp.field();
    LocalComponent c = component_cut(sp, dihedral23_eigen(F));
    REQUIRE(c.dim() == 2);

    // operators away from p and the level: all scalar on this block
    std::vector<MatFq> anaemic;
    for (uint64_t ell : {2, 3, 7, 11}) anaemic.push_back(component_matrix(c, ell));
    auto T = FiniteAlgebra::closure(F, 2, anaemic);
    CHECK(T.length() == 1);
    CHECK(T.is_local());
    // the count identity's left side: torsion 2 = 1 + one weight-one form
    CHECK(m_torsion_dim(T) == 2);

    // adjoining T_p doubles the algebra and splits the two lifts
    auto extended = anaemic;
    extended.push_back(component_matrix(c, 5));
    auto Tt = FiniteAlgebra::closure(F, 2, extended);
    CHECK(Tt.length() == 2);
    REQUIRE(Tt.characters().size() == 2);
    CHECK(Tt.characters()[0][4].canonical_uint() == 1);
    CHECK(Tt.characters()[1][4].canonical_uint() == 4);
    CHECK(m_torsion_dim(Tt, 0) == 1);
    CHECK(m_torsion_dim(Tt, 1) == 1);
    CHECK(Tt.length() == T.length() + 1);

    // no scalar multiplies T_p back into the scalars, so J = 0 ...
    auto J = annihilator_of_quotient(T, Tt);
    CHECK(J.empty());
    CHECK(quotient_length(T, J) == 1);
    // ... the J-torsion is the whole block, both algebras act faithfully on
    // it, and the lengths satisfy the doubling equation
    MatFq mj = simultaneous_kernel(F, 2, J);
    CHECK(mj.cols() == 2);
    auto ann_small = annihilator_of_submodule(T, mj);
    auto ann_big = annihilator_of_submodule(Tt, mj);
    CHECK(ann_small.empty());
    CHECK(ann_big.empty());
    CHECK(quotient_length(Tt, ann_big) == 2 * quotient_length(T, ann_small));

    // the big algebra is not a subalgebra of the small one
    CHECK_THROWS_AS(annihilator_of_quotient(Tt, T), Error);
}

TEST_CASE("dual number relation checker") {
    auto F = FieldCtx::make(7, 1);
    MatFq id = MatFq::identity(F, 2), z(F, 2, 2);

    // trivial deformation: tau = 1, phi = diag(a, 1/a)
    MatFq phi0(F, 2, 2);
    phi0.set_int(0, 0, 3);
    phi0.set_int(1, 1, 5);  // 3 * 5 = 1 mod 7
    DualNumberRep triv({id, z}, {phi0, z}, {F->from_int(3), F->zero()});
    auto ck = dual_number_check(triv);
    CHECK(ck.trace_two);
    CHECK(ck.tau_unipotent);
    CHECK(ck.tau_phi);
    CHECK(ck.phi_tau);
    CHECK(ck.phi_quadratic);
    CHECK(ck.all());

    // a scalar eps-perturbation of tau fails exactly the trace relation
    MatFq y(F, 2, 2);
    y.set_int(0, 0, 2);
    y.set_int(1, 1, -2);
    y.set_int(0, 1, 3);
    DualNumberRep bad({id, id}, {id, y}, {F->one(), F->from_int(4)});
    auto ck2 = dual_number_check(bad);
    CHECK(!ck2.trace_two);
    CHECK(ck2.tau_unipotent);
    CHECK(ck2.tau_phi);
    CHECK(ck2.phi_tau);
    CHECK(ck2.phi_quadratic);
    CHECK(!ck2.all());

    // a traceless eps-perturbation passes everything
    MatFq x(F, 2, 2);
    x.set_int(0, 1, 1);
    DualNumberRep good({id, x}, {id.scaled(F->from_int(-1)), y}, {F->from_int(-1), F->one()});
    CHECK(dual_number_check(good).all());

    // construction enforces the shape
    CHECK_THROWS_AS(DualNumberRep({phi0, z}, {phi0, z}, {F->from_int(3), F->zero()}), Error);
    CHECK_THROWS_AS(DualNumberRep({id, z}, {phi0, z}, {F->zero(), F->one()}), Error);
    MatFq bad_det(F, 2, 2);
    bad_det.set_int(0, 0, 3);
    bad_det.set_int(1, 1, 3);
    CHECK_THROWS_AS(DualNumberRep({id, z}, {bad_det, z}, {F->from_int(3), F->zero()}), Error);
    CHECK_THROWS_AS(DualNumberRep({MatFq::identity(F, 3), MatFq(F, 3, 3)},
                                  {MatFq::identity(F, 3), MatFq(F, 3, 3)},
                                  {F->one(), F->zero()}),
                    Error);
}

TEST_CASE("dual number property: the trace is the only live condition") {
    auto F = FieldCtx::make(7, 1);
    MatFq id = MatFq::identity(F, 2);
    std::mt19937_64 rng(20260818u);
    auto rnd = [&] { return F->from_int(int64_t(rng() % 7)); };

    int trace_zero = 0;
    for (int iter = 0; iter < 1000; ++iter) {
        MatFq x(F, 2, 2), y(F, 2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                x.set(i, j, rnd());
                y.set(i, j, rnd());
            }
        y.set(1, 1, -y.at(0, 0));  // det(phi) = 1 needs tr(y) = 0
        Fq a = (rng() & 1) ? F->one() : F->from_int(-1);
        DualNumberRep rep({id, x}, {id.scaled(a), y}, {a, rnd()});
        auto ck = dual_number_check(rep);
        bool tz = (x.at(0, 0) + x.at(1, 1)).is_zero();
        CHECK(ck.all() == tz);
        CHECK(ck.tau_unipotent);
        CHECK(ck.tau_phi);
        CHECK(ck.phi_tau);
        CHECK(ck.phi_quadratic);
        if (tz) ++trace_zero;
    }
    CHECK(trace_zero > 50);
    CHECK(trace_zero < 950);
}
