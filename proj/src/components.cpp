#include "components.hpp"

#include <algorithm>
#include <numeric>

#include "common.hpp"

namespace thd {

namespace {

// ---- small polynomial helpers over F_q (ascending coefficients) ----

using Pol = std::vector<Fq>;

void trim(Pol& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

size_t deg(const Pol& a) { return a.empty() ? 0 : a.size() - 1; }

Pol monic(Pol a) {
    trim(a);
    if (a.empty()) return a;
    Fq inv = a.back().inv();
    for (auto& c : a) c = c * inv;
    return a;
}

Pol pmul(const Pol& a, const Pol& b, const Ctx& F) {
    if (a.empty() || b.empty()) return {};
    Pol out(a.size() + b.size() - 1, F->zero());
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) out[i + j] = out[i + j] + a[i] * b[j];
    }
    return out;
}

// Remainder mod a monic nonconstant f.
Pol pmod(Pol a, const Pol& f) {
    trim(a);
    while (a.size() >= f.size()) {
        Fq lead = a.back();
        size_t shift = a.size() - f.size();
        if (!lead.is_zero())
            for (size_t i = 0; i + 1 < f.size(); ++i)
                a[shift + i] = a[shift + i] - lead * f[i];
        a.pop_back();
        trim(a);
    }
    return a;
}

// Exact quotient a / f for monic f dividing a.
Pol pdiv_exact(Pol a, const Pol& f) {
    trim(a);
    if (a.empty()) return {};
    if (a.size() < f.size()) fail(ErrorCode::Internal, "exact polynomial division left a remainder");
    Pol q(a.size() - f.size() + 1, a.back().ctx()->zero());
    while (a.size() >= f.size()) {
        Fq lead = a.back();
        size_t shift = a.size() - f.size();
        q[shift] = lead;
        if (!lead.is_zero())
            for (size_t i = 0; i + 1 < f.size(); ++i)
                a[shift + i] = a[shift + i] - lead * f[i];
        a.pop_back();
        trim(a);
    }
    if (!a.empty()) fail(ErrorCode::Internal, "exact polynomial division left a remainder");
    return q;
}

Pol pgcd(Pol a, Pol b) {
    a = monic(std::move(a));
    b = monic(std::move(b));
    while (!b.empty()) {
        Pol r = pmod(a, b);
        a = std::move(b);
        b = monic(std::move(r));
    }
    return a;
}

Pol pderiv(const Pol& a, const Ctx& F) {
    Pol out;
    for (size_t i = 1; i < a.size(); ++i) out.push_back(a[i] * F->from_int(int64_t(i)));
    trim(out);
    return out;
}

Pol psub(Pol a, const Pol& b, const Ctx& F) {
    if (a.size() < b.size()) a.resize(b.size(), F->zero());
    for (size_t i = 0; i < b.size(); ++i) a[i] = a[i] - b[i];
    trim(a);
    return a;
}

// g^e mod f, f monic of degree >= 1.
Pol ppow_mod(Pol g, uint64_t e, const Pol& f, const Ctx& F) {
    Pol out{F->one()};
    g = pmod(std::move(g), f);
    while (e) {
        if (e & 1) out = pmod(pmul(out, g, F), f);
        e >>= 1;
        if (e) g = pmod(pmul(g, g, F), f);
    }
    return out;
}

// Degree of the splitting field of cp over F_q: the lcm of the degrees of
// its irreducible factors.  Multiplicity is peeled off recursively (a zero
// derivative means cp is a p-th power, since x -> x^p is onto here).
uint32_t splitting_degree(Pol cp, const Ctx& F) {
    cp = monic(std::move(cp));
    if (deg(cp) <= 1) return 1;
    Pol d1 = pderiv(cp, F);
    if (d1.empty()) {
        const uint64_t p = F->p();
        Pol s;
        for (size_t i = 0; i * p < cp.size(); ++i) {
            Fq c = cp[i * p];
            for (uint32_t j = 0; j + 1 < F->r(); ++j) c = c.frobenius();
            s.push_back(c);
        }
        return splitting_degree(std::move(s), F);
    }
    Pol g = pgcd(cp, d1);
    if (deg(g) >= 1)
        return uint32_t(std::lcm(uint64_t(splitting_degree(pdiv_exact(cp, g), F)),
                                 uint64_t(splitting_degree(g, F))));
    // cp is squarefree: distinct-degree sieve.
    Pol f1 = std::move(cp);
    uint64_t out = 1;
    Pol x{F->zero(), F->one()};
    Pol h = pmod(x, f1);
    for (uint32_t dd = 1; deg(f1) >= 1; ++dd) {
        if (2 * uint64_t(dd) > deg(f1)) {
            // whatever is left is a single irreducible factor
            out = std::lcm(out, uint64_t(deg(f1)));
            break;
        }
        h = ppow_mod(std::move(h), F->q(), f1, F);
        Pol g2 = pgcd(psub(h, pmod(x, f1), F), f1);
        if (!g2.empty() && deg(g2) >= 1) {
            out = std::lcm(out, uint64_t(dd));
            f1 = pdiv_exact(f1, g2);
            if (deg(f1) == 0) break;
            h = pmod(std::move(h), f1);
        }
    }
    return uint32_t(out);
}

Fq poly_eval(const Pol& a, const Fq& x, const Ctx& F) {
    Fq acc = F->zero();
    for (size_t i = a.size(); i-- > 0;) acc = acc * x + a[i];
    return acc;
}

// Quotient of a by (x - root); the division must be exact.
Pol div_linear(const Pol& a, const Fq& root) {
    Pol q(a.size() - 1, root.ctx()->zero());
    Fq carry = a.back();
    for (size_t i = a.size() - 1; i-- > 0;) {
        q[i] = carry;
        carry = a[i] + root * carry;
    }
    if (!carry.is_zero()) fail(ErrorCode::Internal, "claimed root fails synthetic division");
    return q;
}

// Rows of `src` recombined by the columns of K, inserted into a fresh
// reduced-echelon space; the rank must come out equal to K's column count.
RowSpace recombine(const RowSpace& src, const MatFq& K) {
    RowSpace out(src.ctx(), src.prec());
    for (size_t j = 0; j < K.cols(); ++j) {
        std::vector<Fq> co(K.rows(), src.ctx()->zero());
        for (size_t i = 0; i < K.rows(); ++i) co[i] = K.at(i, j);
        if (!out.insert(src.combine(co)))
            fail(ErrorCode::Internal, "dependent generalized eigenvectors");
    }
    return out;
}

void check_eigenvalue_ok(const MatFq& R, const Fq& a) {
    MatFq N = R - MatFq::identity(R.ctx(), R.rows()).scaled(a);
    if (N.nullspace().cols() == 0)
        fail(ErrorCode::NotAnEigenvalue, "the value is not an eigenvalue of the restricted operator");
}

}  // namespace

const Fq* Eigensystem::anaemic_value(uint64_t ell) const {
    for (auto& [l, a] : anaemic)
        if (l == ell) return &a;
    return nullptr;
}

const Fq* Eigensystem::extended_value(uint64_t ell) const {
    for (auto& [l, a] : extended)
        if (l == ell) return &a;
    return nullptr;
}

void Eigensystem::set_anaemic(uint64_t ell, const Fq& a) {
    auto it = std::lower_bound(anaemic.begin(), anaemic.end(), ell,
                               [](const auto& pr, uint64_t l) { return pr.first < l; });
    if (it != anaemic.end() && it->first == ell)
        it->second = a;
    else
        anaemic.insert(it, {ell, a});
}

void Eigensystem::set_extended(uint64_t ell, const Fq& a) {
    auto it = std::lower_bound(extended.begin(), extended.end(), ell,
                               [](const auto& pr, uint64_t l) { return pr.first < l; });
    if (it != extended.end() && it->first == ell)
        it->second = a;
    else
        extended.insert(it, {ell, a});
}

MatFq restricted_matrix(const RowSpace& rows, uint64_t ell, uint32_t k, const DirichletChar& chi) {
    if (!is_prime_u64(ell)) fail(ErrorCode::UsageError, "Hecke index must be prime");
    const Ctx& F = rows.ctx();
    const uint32_t d = rows.rank();
    MatFq M(F, d, d);
    if (d == 0) return M;
    uint32_t out_prec = rows.prec() == 0 ? 0 : uint32_t((rows.prec() - 1) / ell + 1);
    if (out_prec == 0 || rows.pivots().back() >= out_prec)
        fail(ErrorCode::AmbiguousSolve, "image precision does not reach the last pivot");
    RowSpace low(F, out_prec);
    for (uint32_t i = 0; i < d; ++i)
        if (!low.insert(rows.row_series(i).truncate(out_prec)))
            fail(ErrorCode::Internal, "rows went dependent under truncation despite pivot cover");
    for (uint32_t j = 0; j < d; ++j) {
        QExpansion img = hecke_tl(rows.row_series(j), ell, k, chi);
        std::vector<Fq> co = low.coordinates(img);
        for (uint32_t i = 0; i < d; ++i) M.set(i, j, co[i]);
    }
    return M;
}

const MatFq& component_matrix(LocalComponent& c, uint64_t ell) {
    auto it = c.ops.find(ell);
    if (it != c.ops.end()) return it->second;
    if (!c.parent) fail(ErrorCode::UsageError, "component without a parent space");
    MatFq M = restricted_matrix(c.rows, ell, c.parent->weight(), c.parent->chi());
    for (auto& [l2, M2] : c.ops)
        if (!(M * M2 == M2 * M))
            fail(ErrorCode::Internal, "restricted Hecke matrices fail to commute");
    const Fq* a = c.eigen.anaemic_value(ell);
    if (!a) a = c.eigen.extended_value(ell);
    if (a) {
        MatFq N = M - MatFq::identity(M.ctx(), M.rows()).scaled(*a);
        if (N.generalized_nullspace().cols() != M.rows())
            fail(ErrorCode::Internal, "pinned eigenvalue is not nilpotent on its component");
    }
    return c.ops.emplace(ell, std::move(M)).first->second;
}

MatFq operator_matrix(LocalComponent& c, const OpDesc& op) {
    if (!c.parent) fail(ErrorCode::UsageError, "component without a parent space");
    const ModFormSpace& sp = *c.parent;
    switch (op.kind) {
        case OpDesc::Kind::Tl:
            if (!is_prime_u64(op.n) || sp.level() % op.n == 0 || op.n == sp.p())
                fail(ErrorCode::UsageError, "T_ell wants a prime away from p and the level");
            return component_matrix(c, op.n);
        case OpDesc::Kind::Ul:
            if (!is_prime_u64(op.n) || sp.level() % op.n != 0)
                fail(ErrorCode::UsageError, "U_ell wants a prime dividing the level");
            return component_matrix(c, op.n);
        case OpDesc::Kind::Tp:
            if (op.n != sp.p()) fail(ErrorCode::UsageError, "T_p wants the characteristic");
            return component_matrix(c, op.n);
        case OpDesc::Kind::Diamond:
            if (gcd_u64(op.n, sp.level()) != 1)
                fail(ErrorCode::UsageError, "diamond operators want a unit mod the level");
            return MatFq::identity(sp.field(), c.dim())
                .scaled(sp.chi().value_fq(sp.field(), op.n));
    }
    fail(ErrorCode::Internal, "unhandled operator kind");
}

std::vector<std::pair<Fq, uint32_t>> poly_roots(const std::vector<Fq>& poly) {
    Pol a = poly;
    trim(a);
    if (a.empty()) fail(ErrorCode::UsageError, "root-finding on the zero polynomial");
    const Ctx& F = a.back().ctx();
    if (F->q() > 200000) fail(ErrorCode::Internal, "root scan over a field this large is unsupported");
    std::vector<std::pair<Fq, uint32_t>> out;
    for (uint64_t v = 0; v < F->q(); ++v) {
        Fq cand = F->from_canonical_uint(v);
        if (!poly_eval(a, cand, F).is_zero()) continue;
        uint32_t mult = 0;
        Pol work = a;
        while (work.size() > 1 && poly_eval(work, cand, F).is_zero()) {
            work = div_linear(work, cand);
            ++mult;
        }
        out.push_back({cand, mult});
    }
    return out;
}

std::vector<LocalComponent> anemic_decompose(const ModFormSpace& sp, uint64_t lbound) {
    if (lbound < sp.sturm())
        fail(ErrorCode::UsageError,
             "a prime bound below the vanishing-order bound cannot separate eigensystems");
    const Ctx& F = sp.field();
    struct Block {
        MatFq cols;
        Eigensystem eig;
    };
    std::vector<Block> blocks;
    blocks.push_back({MatFq::identity(F, sp.dim()), {}});
    for (uint64_t ell = 2; ell <= lbound; ++ell) {
        if (!is_prime_u64(ell) || sp.level() % ell == 0 || ell == sp.p()) continue;
        MatFq M = hecke_matrix(sp, ell);
        std::vector<Block> next;
        for (auto& B : blocks) {
            MatFq R = B.cols.solve(M * B.cols);
            std::vector<Fq> cp = R.charpoly();
            auto roots = poly_roots(cp);
            uint32_t found = 0;
            for (auto& [root, mult] : roots) found += mult;
            if (found + 1 < cp.size()) {
                uint32_t need = splitting_degree(cp, F);
                fail(ErrorCode::FieldTooSmall,
                     "eigenvalues of T_" + std::to_string(ell) + " need coefficient field degree r=" +
                         std::to_string(F->r() * need));
            }
            for (auto& [root, mult] : roots) {
                Block nb;
                nb.eig = B.eig;
                nb.eig.set_anaemic(ell, root);
                if (roots.size() == 1) {
                    nb.cols = B.cols;
                } else {
                    MatFq N = R - MatFq::identity(F, R.rows()).scaled(root);
                    MatFq K = N.generalized_nullspace();
                    if (K.cols() != mult)
                        fail(ErrorCode::Internal,
                             "generalized eigenspace dimension disagrees with multiplicity");
                    nb.cols = B.cols * K;
                }
                next.push_back(std::move(nb));
            }
        }
        blocks = std::move(next);
    }
    std::vector<LocalComponent> out;
    uint32_t total = 0;
    for (auto& B : blocks) {
        LocalComponent c(sp);
        c.eigen = std::move(B.eig);
        for (size_t j = 0; j < B.cols.cols(); ++j) {
            std::vector<Fq> co(sp.dim(), F->zero());
            for (size_t i = 0; i < B.cols.rows(); ++i) co[i] = B.cols.at(i, j);
            if (!c.rows.insert(sp.basis().combine(co)))
                fail(ErrorCode::Internal, "dependent generalized eigenvectors");
        }
        total += c.dim();
        out.push_back(std::move(c));
    }
    if (total != sp.dim()) fail(ErrorCode::Internal, "components do not reconstruct the space");
    return out;
}

LocalComponent component_cut(const ModFormSpace& sp, const Eigensystem& eigen) {
    LocalComponent c(sp);
    c.eigen = eigen;
    for (uint32_t i = 0; i < sp.dim(); ++i)
        if (!c.rows.insert(sp.basis_vector(i)))
            fail(ErrorCode::Internal, "space basis rows are dependent");
    for (auto& [ell, a] : eigen.anaemic) {
        if (c.dim() == 0) break;
        c = refine_cut(c, ell, a);
    }
    return c;
}

LocalComponent refine_cut(const LocalComponent& c, uint64_t ell, const Fq& a) {
    if (!c.parent) fail(ErrorCode::UsageError, "component without a parent space");
    const ModFormSpace& sp = *c.parent;
    if (!is_prime_u64(ell)) fail(ErrorCode::UsageError, "cut index must be prime");
    if (ell == sp.p() || sp.level() % ell == 0)
        fail(ErrorCode::UsageError, "anaemic cuts want ell prime to p and the level");
    LocalComponent out = c;
    out.eigen.set_anaemic(ell, a);
    if (out.dim() == 0) return out;
    MatFq R = restricted_matrix(out.rows, ell, sp.weight(), sp.chi());
    MatFq N = R - MatFq::identity(sp.field(), R.rows()).scaled(a);
    MatFq K = N.generalized_nullspace();
    if (K.cols() != out.dim()) {
        out.rows = recombine(out.rows, K);
        out.ops.clear();
    }
    return out;
}

LocalComponent localize_extended(const LocalComponent& c,
                                 const std::vector<std::pair<uint64_t, Fq>>& extra) {
    if (!c.parent) fail(ErrorCode::UsageError, "component without a parent space");
    const ModFormSpace& sp = *c.parent;
    LocalComponent out = c;
    for (auto& [ell, a] : extra) {
        if (ell != sp.p() && sp.level() % ell != 0)
            fail(ErrorCode::UsageError, "extended cuts want ell | level or ell = p");
        MatFq R = restricted_matrix(out.rows, ell, sp.weight(), sp.chi());
        check_eigenvalue_ok(R, a);
        MatFq N = R - MatFq::identity(sp.field(), R.rows()).scaled(a);
        MatFq K = N.generalized_nullspace();
        if (K.cols() != out.dim()) {
            out.rows = recombine(out.rows, K);
            out.ops.clear();
        }
        out.eigen.set_extended(ell, a);
    }
    return out;
}

std::pair<QExpansion, QExpansion> oldform_embed(const ModFormSpace& big, const QExpansion& f,
                                                uint64_t ell) {
    if (!is_prime_u64(ell)) fail(ErrorCode::UsageError, "auxiliary index must be prime");
    if (big.level() % ell != 0)
        fail(ErrorCode::UsageError, "the big level must be divisible by the auxiliary prime");
    if (big.level() % (ell * ell) == 0)
        fail(ErrorCode::UsageError, "the auxiliary prime must not divide the old level");
    if (f.prec() < big.prec())
        fail(ErrorCode::InsufficientPrecision, "the embedded form needs the big space's precision");
    QExpansion fq = f.truncate(big.prec());
    QExpansion fv = v_op(f, ell, big.prec());
    if (!big.contains(fq)) fail(ErrorCode::NotInSpan, "f(q) misses the level-N*ell space");
    if (!big.contains(fv)) fail(ErrorCode::NotInSpan, "f(q^ell) misses the level-N*ell space");
    return {std::move(fq), std::move(fv)};
}

UlBlock ul_block_check(const ModFormSpace& big, const QExpansion& f, uint64_t ell, const Fq& t_ell,
                       const DirichletChar& chi_old) {
    auto [g0, g1] = oldform_embed(big, f, ell);
    const Ctx& F = big.field();
    RowSpace rs(F, big.prec());
    if (!rs.insert(g0) || !rs.insert(g1))
        fail(ErrorCode::UsageError, "the two oldform copies are dependent");
    MatFq u_ech = restricted_matrix(rs, ell, big.weight(), big.chi());
    // Change basis from the echelon rows to the ordered pair (f(q), f(q^ell)).
    MatFq A(F, 2, 2);
    std::vector<Fq> c0 = rs.coordinates(g0);
    std::vector<Fq> c1 = rs.coordinates(g1);
    for (size_t i = 0; i < 2; ++i) {
        A.set(i, 0, c0[i]);
        A.set(i, 1, c1[i]);
    }
    UlBlock out;
    out.matrix = A.solve(u_ech * A);
    out.expected = MatFq(F, 2, 2);
    out.expected.set(0, 0, t_ell);
    out.expected.set(0, 1, chi_old.value_fq(F, ell) *
                               F->from_int(int64_t(powmod_u64(ell % F->p(), big.weight() - 1,
                                                              F->p()))));
    out.expected.set_int(1, 0, -1);
    out.matches = out.matrix == out.expected;
    out.eigenvalues = poly_roots(out.matrix.charpoly());
    uint32_t found = 0;
    for (auto& [root, mult] : out.eigenvalues) found += mult;
    out.split = found == 2;
    out.repeated_root = out.eigenvalues.size() == 1 && found == 2;
    if (out.repeated_root) {
        MatFq N = out.matrix - MatFq::identity(F, 2).scaled(out.eigenvalues[0].first);
        out.nonsemisimple = (N * N).is_zero() && !N.is_zero();
    }
    return out;
}

UnitRoot unit_root_up(LocalComponent& c) {
    if (!c.parent) fail(ErrorCode::UsageError, "component without a parent space");
    const uint64_t p = c.parent->p();
    Fq a = c.parent->field()->zero();
    if (const Fq* pinned = c.eigen.extended_value(p)) {
        a = *pinned;
    } else {
        auto roots = poly_roots(component_matrix(c, p).charpoly());
        if (roots.size() != 1)
            fail(ErrorCode::UsageError, "T_p is not a single eigenvalue here; cut by one first");
        a = roots[0].first;
    }
    if (a.is_zero()) fail(ErrorCode::NonOrdinary, "a_p = 0 leaves no unit root");
    return {a, true};
}

}  // namespace thd
