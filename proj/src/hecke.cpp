#include "hecke.hpp"

#include "common.hpp"

namespace thd {

QExpansion hecke_tl(const QExpansion& f, uint64_t ell, uint32_t k, const DirichletChar& chi) {
    if (!is_prime_u64(ell)) fail(ErrorCode::UsageError, "Hecke index must be prime");
    if (k == 0) fail(ErrorCode::UsageError, "Hecke operators act on positive weight");
    const Ctx& F = f.ctx();
    const uint64_t p = F->p();
    Fq mult = chi.value_fq(F, ell) * F->from_int(int64_t(powmod_u64(ell % p, k - 1, p)));
    uint32_t out_prec = f.prec() == 0 ? 0 : uint32_t((f.prec() - 1) / ell + 1);
    QExpansion out(F, out_prec);
    const bool have_mult = !mult.is_zero();
    for (uint32_t m = 0; m < out_prec; ++m) {
        Fq a = f.coeff(uint32_t(uint64_t(m) * ell));
        if (have_mult && m % ell == 0) a = a + mult * f.coeff(uint32_t(m / ell));
        if (!a.is_zero()) out.set_coeff(m, a);
    }
    return out;
}

QExpansion hecke_tn(const QExpansion& f, uint64_t n, uint32_t k, const DirichletChar& chi) {
    if (n == 0) fail(ErrorCode::UsageError, "Hecke index must be positive");
    if (f.prec() == 0) fail(ErrorCode::InsufficientPrecision, "empty expansion");
    const Ctx& F = f.ctx();
    QExpansion out = f;
    for (uint64_t ell : distinct_prime_factors(n)) {
        uint32_t e = 0;
        for (uint64_t m = n; m % ell == 0; m /= ell) ++e;
        Fq mult = chi.value_fq(F, ell) * F->from_int(int64_t(powmod_u64(ell % F->p(), k - 1, F->p())));
        QExpansion prev = out;
        QExpansion cur = hecke_tl(out, ell, k, chi);
        for (uint32_t j = 2; j <= e; ++j) {
            QExpansion nxt = hecke_tl(cur, ell, k, chi);
            if (!mult.is_zero()) nxt = nxt - prev.truncate(nxt.prec()).scaled(mult);
            prev = std::move(cur);
            cur = std::move(nxt);
        }
        out = std::move(cur);
    }
    return out;
}

MatFq operator_matrix(const ModFormSpace& sp, const OpDesc& op) {
    switch (op.kind) {
        case OpDesc::Kind::Tl:
            if (!is_prime_u64(op.n) || sp.level() % op.n == 0 || op.n == sp.p())
                fail(ErrorCode::UsageError, "T_ell wants a prime away from p and the level");
            return hecke_matrix(sp, op.n);
        case OpDesc::Kind::Ul:
            if (!is_prime_u64(op.n) || sp.level() % op.n != 0)
                fail(ErrorCode::UsageError, "U_ell wants a prime dividing the level");
            return hecke_matrix(sp, op.n);
        case OpDesc::Kind::Tp:
            if (op.n != sp.p()) fail(ErrorCode::UsageError, "T_p wants the characteristic");
            return hecke_matrix(sp, op.n);
        case OpDesc::Kind::Diamond:
            if (gcd_u64(op.n, sp.level()) != 1)
                fail(ErrorCode::UsageError, "diamond operators want a unit mod the level");
            return MatFq::identity(sp.field(), sp.dim())
                .scaled(sp.chi().value_fq(sp.field(), op.n));
    }
    fail(ErrorCode::Internal, "unhandled operator kind");
}

RowSpace truncated_basis(const ModFormSpace& sp, uint32_t new_prec) {
    if (new_prec < sp.sturm())
        fail(ErrorCode::InsufficientPrecision,
             "truncation below the vanishing-order bound loses certification");
    RowSpace rs(sp.field(), new_prec);
    for (uint32_t i = 0; i < sp.dim(); ++i) {
        if (!rs.insert(sp.basis_vector(i).truncate(new_prec)))
            fail(ErrorCode::Internal, "basis rows truncate to a dependent set");
    }
    return rs;
}

MatFq hecke_matrix(const ModFormSpace& sp, uint64_t ell) {
    if (!is_prime_u64(ell)) fail(ErrorCode::UsageError, "Hecke index must be prime");
    const uint32_t d = sp.dim();
    MatFq M(sp.field(), d, d);
    if (d == 0) return M;
    uint32_t out_prec = uint32_t((sp.prec() - 1) / ell + 1);
    RowSpace low = truncated_basis(sp, out_prec);
    for (uint32_t j = 0; j < d; ++j) {
        QExpansion img = hecke_tl(sp.basis_vector(j), ell, sp.weight(), sp.chi());
        std::vector<Fq> co = low.coordinates(img);
        for (uint32_t i = 0; i < d; ++i) M.set(i, j, co[i]);
    }
    return M;
}

}  // namespace thd
