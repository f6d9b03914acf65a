#include "weightone.hpp"

#include "common.hpp"

namespace thd {

namespace {

// Kernel of the prime-to-p coefficient functionals on the component, as
// coordinate columns.  Conditions run below the vanishing-order bound of
// weight k + p + 1 (the weight of theta images), which certifies that every
// kernel element is killed by theta identically.
MatFq theta_kernel_coords(const LocalComponent& c) {
    const ModFormSpace& sp = *c.parent;
    uint64_t p = sp.p();
    if (sp.level() % p == 0) fail(ErrorCode::UsageError, "level must be prime to p");
    uint32_t bound = sturm_bound(sp.level(), sp.weight() + uint32_t(p) + 1);
    if (sp.prec() < bound)
        fail(ErrorCode::InsufficientPrecision, "theta-kernel cut needs the weight-(k+p+1) vanishing bound");
    const Ctx& F = sp.field();
    uint32_t r = F->r(), d = c.dim();
    std::vector<uint32_t> ns;
    for (uint32_t n = 1; n < bound; ++n)
        if (n % p != 0) ns.push_back(n);
    MatFq cond(F, ns.size(), d);
    for (uint32_t j = 0; j < d; ++j) {
        const std::vector<uint8_t>& row = c.rows.row(j);
        for (size_t i = 0; i < ns.size(); ++i) cond.set(i, j, F->decode(&row[size_t(ns[i]) * r]));
    }
    return cond.nullspace();
}

// Restricted operators at the primes ell <= sturm away from pN, paired with
// their residue eigenvalues (pinned, or the unique eigenvalue of the
// restriction).
struct AnaemicOps {
    std::vector<uint64_t> primes;
    std::vector<MatFq> mats;
    std::vector<Fq> eigs;
};

AnaemicOps anaemic_ops(LocalComponent& c, const std::vector<uint64_t>& op_primes) {
    const ModFormSpace& sp = *c.parent;
    const Ctx& F = sp.field();
    uint32_t d = c.dim();
    std::vector<uint64_t> ells = op_primes;
    if (ells.empty())
        for (uint64_t ell = 2; ell <= sp.sturm(); ++ell)
            if (is_prime_u64(ell) && ell != sp.p() && sp.level() % ell != 0) ells.push_back(ell);
    AnaemicOps out;
    for (uint64_t ell : ells) {
        if (!is_prime_u64(ell) || ell == sp.p() || sp.level() % ell == 0)
            fail(ErrorCode::UsageError, "anaemic operator indices must be primes away from p and the level");
        MatFq m = component_matrix(c, ell);
        Fq a = F->zero();
        if (const Fq* pin = c.eigen.anaemic_value(ell)) {
            a = *pin;
        } else {
            auto roots = poly_roots(m.charpoly());
            if (roots.size() != 1 || roots[0].second != d)
                fail(ErrorCode::UsageError, "component is not local at one of the anaemic operators");
            a = roots[0].first;
        }
        out.primes.push_back(ell);
        out.mats.push_back(std::move(m));
        out.eigs.push_back(a);
    }
    return out;
}

}  // namespace

std::vector<QExpansion> weight_one_space(const LocalComponent& c) {
    const ModFormSpace& sp = *c.parent;
    uint32_t p = uint32_t(sp.p());
    MatFq kernel = theta_kernel_coords(c);
    uint32_t out_prec = (sp.prec() - 1) / p + 1;
    if (out_prec < sturm_bound(sp.level(), 1))
        fail(ErrorCode::InsufficientPrecision, "un-V precision below the weight-one vanishing bound");

    std::vector<QExpansion> out;
    for (size_t j = 0; j < kernel.cols(); ++j) {
        std::vector<Fq> coords(c.dim(), sp.field()->zero());
        for (size_t i = 0; i < coords.size(); ++i) coords[i] = kernel.at(i, j);
        QExpansion g = c.rows.combine(coords);
        if (!theta_op(g).is_zero())
            fail(ErrorCode::Internal, "theta-kernel conditions missed a higher coefficient");
        QExpansion f = u_op(g, p);
        // a nonzero form with p-power support cannot recur one level down
        if (theta_op(f).is_zero() && !f.is_zero())
            fail(ErrorCode::Internal, "un-V'd theta-kernel element is itself a p-th power");
        if (!(v_op(f, p, g.prec()) == g)) fail(ErrorCode::Internal, "V roundtrip mismatch");
        out.push_back(std::move(f));
    }
    return out;
}

CountReport count_identity(LocalComponent& c, const std::vector<Fq>& ap_choices,
                           const std::vector<uint64_t>& op_primes) {
    const ModFormSpace& sp = *c.parent;
    const Ctx& F = sp.field();
    uint32_t d = c.dim();
    CountReport rep;

    AnaemicOps ops = anaemic_ops(c, op_primes);
    std::vector<MatFq> shifted;
    shifted.reserve(ops.mats.size() + 1);
    for (size_t i = 0; i < ops.mats.size(); ++i)
        shifted.push_back(ops.mats[i] - MatFq::identity(F, d).scaled(ops.eigs[i]));
    MatFq strict = simultaneous_kernel(F, d, shifted);
    rep.d_anemic = uint32_t(strict.cols());

    // d_w1 counts torsion, not the localization: theta-kernel directions that
    // are strict simultaneous eigenvectors.  The two differ once the component
    // carries nontrivial nilpotents in weight one (level 47, p = 5 does).
    MatFq theta_k = theta_kernel_coords(c);
    uint32_t s = uint32_t(strict.cols()), t = uint32_t(theta_k.cols());
    MatFq joint(F, d, s + t);
    for (uint32_t i = 0; i < d; ++i) {
        for (uint32_t j = 0; j < s; ++j) joint.set(i, j, strict.at(i, j));
        for (uint32_t j = 0; j < t; ++j) joint.set(i, s + j, theta_k.at(i, j));
    }
    MatFq meet = joint.nullspace();
    rep.d_w1 = uint32_t(meet.cols());
    for (size_t j = 0; j < meet.cols(); ++j) {
        std::vector<Fq> coords(d, F->zero());
        for (uint32_t i = 0; i < d; ++i)
            for (uint32_t a = 0; a < s; ++a) coords[i] = coords[i] + strict.at(i, a) * meet.at(a, j);
        if (!theta_op(c.rows.combine(coords)).is_zero())
            fail(ErrorCode::Internal, "torsion theta-kernel certification failed");
    }

    MatFq mp = component_matrix(c, sp.p());
    std::vector<Fq> choices = ap_choices;
    if (choices.empty()) {
        for (const auto& [root, mult] : poly_roots(mp.charpoly())) choices.push_back(root);
        if (choices.empty())
            fail(ErrorCode::FieldTooSmall, "the restricted T_p has no eigenvalue over the coefficient field");
    }
    bool all_one = true;
    for (const Fq& alpha : choices) {
        auto ext = shifted;
        ext.push_back(mp - MatFq::identity(F, d).scaled(alpha));
        uint32_t dt = uint32_t(simultaneous_kernel(F, d, ext).cols());
        rep.d_tilde.emplace_back(alpha, dt);
        all_one = all_one && dt == 1;
    }
    rep.verdict = all_one && rep.d_anemic == 1 + rep.d_w1 && rep.d_w1 <= 1;
    return rep;
}

DoubledData doubled_submodule(LocalComponent& c, const std::vector<uint64_t>& op_primes) {
    const ModFormSpace& sp = *c.parent;
    const Ctx& F = sp.field();
    uint32_t d = c.dim();

    AnaemicOps ops = anaemic_ops(c, op_primes);
    FiniteAlgebra small = FiniteAlgebra::closure(F, d, ops.mats);
    auto ext_gens = ops.mats;
    ext_gens.push_back(component_matrix(c, sp.p()));
    FiniteAlgebra big = FiniteAlgebra::closure(F, d, ext_gens);

    std::vector<MatFq> j = annihilator_of_quotient(small, big);
    MatFq mj = simultaneous_kernel(F, d, j);
    if (mj.cols() > 0) {
        for (const auto& g : big.gens()) {
            try {
                mj.solve(g * mj);
            } catch (const Error&) {
                fail(ErrorCode::Internal, "J-torsion is not stable under the extended algebra");
            }
        }
    }
    std::vector<MatFq> ann_small = annihilator_of_submodule(small, mj);
    std::vector<MatFq> ann_big = annihilator_of_submodule(big, mj);
    uint32_t len_j = quotient_length(small, j);
    uint32_t len_a = quotient_length(small, ann_small);
    uint32_t len_ta = quotient_length(big, ann_big);
    bool doubled = len_ta == 2 * len_a;
    return DoubledData{std::move(small), std::move(big),  std::move(j), std::move(mj),
                       len_j,            len_a,           len_ta,       doubled};
}

PairingData pairing_gram(LocalComponent& c, const DoubledData& dd) {
    const ModFormSpace& sp = *c.parent;
    const Ctx& F = sp.field();
    uint32_t d = c.dim();

    // the pairing lives on the maximal doubled submodule M[J], in whose
    // coordinates the theta kernel is cut out by the same coefficient rows
    const MatFq& msub = dd.j_torsion;
    uint32_t m = uint32_t(msub.cols());
    std::vector<MatFq> reps = quotient_representatives(dd.anaemic_alg, dd.j_ideal);
    MatFq kernel = theta_kernel_coords(c);
    FlatSpan span(F, d);
    for (size_t j = 0; j < kernel.cols(); ++j) {
        std::vector<Fq> col(d, F->zero());
        for (size_t i = 0; i < d; ++i) col[i] = kernel.at(i, j);
        if (!span.insert(std::move(col))) fail(ErrorCode::Internal, "dependent theta kernel basis");
    }
    // columns of M[J] completing ker(theta) pick the representatives f_b:
    // M / ker_M(theta) embeds in component / ker(theta)
    std::vector<uint32_t> fidx;
    for (uint32_t i = 0; i < m; ++i) {
        std::vector<Fq> col(d, F->zero());
        for (uint32_t a = 0; a < d; ++a) col[a] = msub.at(a, i);
        if (span.insert(std::move(col))) fidx.push_back(i);
    }

    PairingData out{MatFq(F, reps.size(), fidx.size()), 0, uint32_t(fidx.size()), false};
    for (size_t a = 0; a < reps.size(); ++a) {
        for (size_t b = 0; b < fidx.size(); ++b) {
            std::vector<Fq> coords(d, F->zero());
            for (size_t i = 0; i < d; ++i)
                for (size_t j = 0; j < d; ++j) coords[i] = coords[i] + reps[a].at(i, j) * msub.at(j, fidx[b]);
            out.gram.set(a, b, c.rows.combine(coords).coeff(1));
        }
    }
    out.rank = uint32_t(out.gram.rank());
    out.perfect = out.rank == dd.len_t_mod_j && dd.len_t_mod_j == out.theta_coker_dim;
    return out;
}

}  // namespace thd
