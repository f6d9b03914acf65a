#include "eisbasis.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "bigrat.hpp"
#include "cache.hpp"
#include "common.hpp"

namespace thd {

CycRat gen_bernoulli(const DirichletChar& chi, uint32_t k) {
    if (k == 0) fail(ErrorCode::UsageError, "Bernoulli weight must be positive");
    const uint64_t N = chi.modulus();
    CycPtr C = CycCtx::make(chi.order());
    CycRat total = C->zero();
    // N^{k-1} sum_a chi(a) B_k(a/N) expanded through the Bernoulli polynomial;
    // the a-sum over 1..N (not 0..N-1) bakes in the B_1 = +1/2 normalization.
    for (uint64_t a = 1; a <= N; ++a) {
        if (N > 1 && gcd_u64(a, N) != 1) continue;
        std::vector<Rat> apow(k + 1);
        apow[0] = Rat(1);
        for (uint32_t i = 1; i <= k; ++i) apow[i] = apow[i - 1] * Rat(int64_t(a));
        Rat npow(1, int64_t(N));  // N^{j-1}, starting at j = 0
        Rat inner(0);
        for (uint32_t j = 0; j <= k; ++j) {
            const Rat& bj = bernoulli_number(j);
            if (!bj.is_zero()) inner = inner + binomial_rat(k, j) * bj * apow[k - j] * npow;
            npow = npow * Rat(int64_t(N));
        }
        total = total + chi.value_cyc(C, a) * inner;
    }
    return total;
}

QExpansion eisenstein_qexp(const DirichletChar& psi_in, const DirichletChar& phi_in, uint32_t k,
                           uint32_t prec, const Ctx& F) {
    if (k == 0) fail(ErrorCode::UsageError, "Eisenstein weight must be positive");
    if (psi_in.conductor() != psi_in.modulus() || phi_in.conductor() != phi_in.modulus())
        fail(ErrorCode::UsageError, "Eisenstein characters must be primitive");
    if ((psi_in.is_even() == phi_in.is_even()) != (k % 2 == 0))
        fail(ErrorCode::ParityMismatch, "character parity does not match the weight");
    if (k == 2 && psi_in.modulus() == 1 && phi_in.modulus() == 1)
        fail(ErrorCode::UsageError,
             "the weight-2 level-1 series is not modular; use e2_imprimitive");

    DirichletChar psi = psi_in, phi = phi_in;
    // At weight 1 the q-expansion is symmetric in the pair; put a modulus-1
    // slot first so the constant-term branch below sees it.
    if (k == 1 && phi.modulus() == 1) std::swap(psi, phi);
    const uint64_t p = F->p();
    const uint32_t r = F->r();
    const uint64_t u = psi.modulus(), v = phi.modulus();

    QExpansion out(F, prec);
    if (prec == 0) return out;

    if (u == 1) {
        CycRat c0 = gen_bernoulli(phi, k) * Rat(-1, 2 * int64_t(k));
        int64_t e = 0;
        for (const Rat& c : c0.coeffs())
            if (!c.is_zero()) e = std::min(e, c.valuation(p));
        if (e < 0) {
            // Rescaled by p^{-e} the sigma tail (p-integral) dies mod p and
            // only the constant survives.
            std::vector<Rat> sc;
            sc.reserve(c0.coeffs().size());
            for (const Rat& c : c0.coeffs()) sc.push_back(c.times_ppow(p, -e));
            out.set_coeff(0, CycRat(c0.ctx(), std::move(sc)).reduce(F));
            return out;
        }
        out.set_coeff(0, c0.reduce(F));
    }

    std::vector<uint8_t> ptab = psi.value_table(F), vtab = phi.value_table(F);
    std::vector<Fq> psi_vals(u, F->zero()), phi_vals(v, F->zero());
    for (uint64_t i = 0; i < u; ++i) psi_vals[i] = F->decode(&ptab[i * r]);
    for (uint64_t i = 0; i < v; ++i) phi_vals[i] = F->decode(&vtab[i * r]);

    std::vector<Fq> acc(prec, F->zero());
    for (uint64_t d = 1; d < prec; ++d) {
        const Fq& fphi = phi_vals[d % v];
        if (fphi.is_zero()) continue;
        uint64_t dk = powmod_u64(d % p, k - 1, p);
        if (dk == 0) continue;
        Fq fd = fphi * F->from_int(int64_t(dk));
        for (uint64_t n = d; n < prec; n += d) {
            const Fq& ps = psi_vals[(n / d) % u];
            if (!ps.is_zero()) acc[n] = acc[n] + fd * ps;
        }
    }
    for (uint32_t n = 1; n < prec; ++n)
        if (!acc[n].is_zero()) out.set_coeff(n, acc[n]);
    return out;
}

QExpansion e2_imprimitive(uint64_t t, uint32_t prec, const Ctx& F) {
    if (t < 2) fail(ErrorCode::UsageError, "imprimitivity parameter must be at least 2");
    const uint64_t p = F->p();
    QExpansion base(F, prec);
    if (prec == 0) return base;
    base.set_coeff_int(0, int64_t(Rat(-1, 24).mod_p(p)));
    std::vector<uint32_t> s1(prec, 0);
    for (uint32_t d = 1; d < prec; ++d)
        for (uint32_t n = d; n < prec; n += d) s1[n] = uint32_t((s1[n] + d) % p);
    for (uint32_t n = 1; n < prec; ++n) base.set_coeff_int(n, int64_t(s1[n]));
    QExpansion emb = v_op(base, uint32_t(t), prec);
    return base - emb.scaled(F->from_int(int64_t(t % p)));
}

uint32_t sturm_bound(uint64_t N, uint32_t k) {
    return uint32_t(uint64_t(k) * gamma0_index(N) / 12 + 1);
}

namespace {

// Factor vocabulary for the spanning search: either the two-character series
// E_w(psi, phi) pushed through q -> q^t, or the weight-2 imprimitive family.
struct EisObj {
    bool e2 = false;
    uint32_t w = 0;
    uint64_t t = 1;
    size_t psi = 0, phi = 0;  // pool indices; unused when e2
};

using ObjKey = std::tuple<int, uint32_t, uint64_t, size_t, size_t>;
using BaseKey = std::tuple<size_t, size_t, uint32_t>;

ObjKey key_of(const EisObj& o) {
    return {o.e2 ? 1 : 0, o.w, o.t, o.e2 ? 0 : o.psi, o.e2 ? 0 : o.phi};
}

DirichletChar char_inverse(const DirichletChar& c) { return c.power(c.order() - 1); }

}  // namespace

ModFormSpace::ModFormSpace(uint64_t p, uint64_t N, uint32_t k, DirichletChar chi, Ctx F,
                           uint32_t prec)
    : p_(p), N_(N), k_(k), chi_(std::move(chi)), F_(std::move(F)), prec_(prec), basis_(F_, prec) {}

ModFormSpace ModFormSpace::build(uint64_t p, uint64_t N, uint32_t k, const std::string& chi_label,
                                 uint32_t prec, const std::string& cache_dir, uint32_t r_min) {
    if (N == 0) fail(ErrorCode::UsageError, "level must be positive");
    if (gcd_u64(p, N) != 1) fail(ErrorCode::UsageError, "characteristic must not divide the level");
    auto G = std::make_shared<UnitGroup>(N);
    DirichletChar chi = DirichletChar::parse(G, chi_label);
    uint32_t r = char_field_degree(chi, p);
    // Containment of the character-value field needs r | r', so round the
    // requested degree up to the next multiple.
    if (r_min > r) r = r * ((r_min + r - 1) / r);
    Ctx F = FieldCtx::make(p, r);
    ModFormSpace sp(p, N, k, std::move(chi), std::move(F), prec);
    sp.sturm_ = sturm_bound(N, k);
    if (prec < sp.sturm_)
        fail(ErrorCode::InsufficientPrecision, "precision " + std::to_string(prec) +
                                                   " is below the vanishing-order bound " +
                                                   std::to_string(sp.sturm_));
    sp.dim_formula_ = dim_mk_chi(sp.chi(), k);  // weight 1 is rejected here
    if (!cache_dir.empty() && sp.load_cache(cache_dir)) return sp;
    if (r != char_field_degree(sp.chi(), p)) {
        // Forced degree: generate over the automatic field and extend
        // scalars.  Constant-coefficient reinterpretation only works from
        // the prime field, which is the only case the retry path needs.
        if (char_field_degree(sp.chi(), p) != 1)
            fail(ErrorCode::DegreeTooLarge,
                 "forced coefficient fields extend prime-field characters only");
        ModFormSpace base = build(p, N, k, chi_label, prec, cache_dir);
        for (uint32_t i = 0; i < base.dim(); ++i) {
            QExpansion src = base.basis_vector(i);
            QExpansion g(sp.F_, prec);
            for (uint32_t n = 0; n < prec; ++n) {
                Fq c = src.coeff(n);
                if (!c.is_zero()) g.set_coeff(n, sp.F_->from_int(int64_t(c.coeffs()[0])));
            }
            if (!sp.basis_.insert(g))
                fail(ErrorCode::Internal, "extension of scalars dropped rank");
        }
        if (int64_t(sp.dim()) != sp.dim_formula_)
            fail(ErrorCode::Internal, "extension of scalars changed the dimension");
    } else {
        sp.generate();
    }
    if (!cache_dir.empty()) sp.save_cache(cache_dir);
    return sp;
}

void ModFormSpace::generate() {
    const DirichletChar& chi = chi_.value();
    if (dim_formula_ <= 0) return;
    if (k_ == 0) {
        QExpansion one(F_, prec_);
        one.set_coeff(0, F_->one());
        basis_.insert(one);
        return;
    }
    const uint32_t dim = uint32_t(dim_formula_);
    auto GN = chi.group_ptr();

    // Primitive characters of order prime to p with conductor dividing N.
    // Restricting to p'-order loses nothing mod p: chi and its p'-part have
    // the same reduction, so every nebentypus and every factor pair that
    // matters is still represented.
    struct PoolChar {
        DirichletChar prim;
        DirichletChar lifted;
        uint64_t cond;
        size_t p_map = 0;
    };
    std::vector<PoolChar> pool;
    for (uint64_t f : divisors_u64(N_)) {
        auto Gf = std::make_shared<UnitGroup>(f);
        for (auto& c : enumerate_prime_to_p_chars(Gf, p_)) {
            if (c.conductor() != f) continue;
            DirichletChar lifted = c.induce(GN);
            pool.push_back(PoolChar{std::move(c), std::move(lifted), f, 0});
        }
    }
    std::sort(pool.begin(), pool.end(), [](const PoolChar& a, const PoolChar& b) {
        if (a.cond != b.cond) return a.cond < b.cond;
        return a.prim.label() < b.prim.label();
    });
    {
        std::map<std::string, size_t> by_label;
        for (size_t i = 0; i < pool.size(); ++i) by_label[pool[i].prim.label()] = i;
        for (auto& pc : pool) {
            auto it = by_label.find(pc.prim.power(p_).label());
            if (it == by_label.end()) fail(ErrorCode::Internal, "character pool not Galois-stable");
            pc.p_map = it->second;
        }
    }

    // Generation field: all character values live in F_{p^R}.
    uint32_t R = F_->r();
    for (const auto& pc : pool) {
        uint32_t d = char_field_degree(pc.prim, p_);
        R = uint32_t(R / gcd_u64(R, d) * d);
    }
    const uint32_t r = F_->r();
    if (R % r != 0) fail(ErrorCode::Internal, "generation field does not contain the target field");
    if (r != 1 && r != R)
        fail(ErrorCode::DegreeTooLarge,
             "coefficient descent supports prime-field or full-degree targets only");
    const Ctx Fgen = (R == r) ? F_ : FieldCtx::make_internal(p_, R);
    const bool descended = (R != r);

    // Trace functional of x^s on the generation field, s = 0 .. 2R-2: the
    // descent below reads linear combinations straight off packed bytes.
    std::vector<uint64_t> T;
    if (descended) {
        T.resize(2 * size_t(R) - 1);
        Fq xs = Fgen->one();
        for (size_t s = 0; s < T.size(); ++s) {
            Fq tr = xs;
            Fq c = xs;
            for (uint32_t i = 1; i < R; ++i) {
                c = c.frobenius();
                tr = tr + c;
            }
            const auto& cf = tr.coeffs();
            for (size_t i = 1; i < cf.size(); ++i)
                if (cf[i]) fail(ErrorCode::Internal, "field trace left the prime field");
            T[s] = cf.empty() ? 0 : cf[0];
            xs = xs * Fgen->gen();
        }
    }
    auto trace_row = [&](const QExpansion& P, uint32_t j) {
        QExpansion row(F_, P.prec());
        const auto& src = P.data();
        auto& dst = row.data();
        for (uint32_t n = 0; n < P.prec(); ++n) {
            const uint8_t* c = &src[size_t(n) * R];
            uint64_t s = 0;
            for (uint32_t tt = 0; tt < R; ++tt) s += uint64_t(c[tt]) * T[j + tt];
            dst[n] = uint8_t(s % p_);
        }
        return row;
    };

    // Factor vocabulary.
    std::vector<EisObj> objs;
    std::vector<DirichletChar> neb;  // nebentypus of each factor, at level N
    std::map<ObjKey, size_t> obj_index;
    DirichletChar triv = DirichletChar::trivial(GN);
    for (uint32_t w = 1; w <= k_; ++w) {
        for (size_t i = 0; i < pool.size(); ++i) {
            for (size_t j = 0; j < pool.size(); ++j) {
                const uint64_t u = pool[i].cond, v = pool[j].cond;
                if (u > N_ / v || N_ % (u * v) != 0) continue;
                if ((pool[i].prim.is_even() == pool[j].prim.is_even()) != (w % 2 == 0)) continue;
                if (w == 2 && u == 1 && v == 1) continue;
                if (w == 1 && i > j) continue;  // the series is symmetric in the pair
                for (uint64_t t : divisors_u64(N_ / (u * v))) {
                    EisObj o{false, w, t, i, j};
                    obj_index[key_of(o)] = objs.size();
                    objs.push_back(o);
                    neb.push_back(pool[i].lifted * pool[j].lifted);
                }
            }
        }
        if (w == 2) {
            for (uint64_t t : divisors_u64(N_)) {
                if (t < 2) continue;
                EisObj o{true, 2, t, 0, 0};
                obj_index[key_of(o)] = objs.size();
                objs.push_back(o);
                neb.push_back(triv);
            }
        }
    }

    // sigma: the arithmetic-Frobenius orbit map on factors, used to process
    // one representative per Galois orbit of factor multisets (traces of the
    // orbit mates are traces of the same rows).
    std::vector<size_t> sigma(objs.size());
    for (size_t i = 0; i < objs.size(); ++i) {
        EisObj o = objs[i];
        if (!o.e2) {
            o.psi = pool[o.psi].p_map;
            o.phi = pool[o.phi].p_map;
            if (o.w == 1 && o.psi > o.phi) std::swap(o.psi, o.phi);
        }
        auto it = obj_index.find(key_of(o));
        if (it == obj_index.end()) fail(ErrorCode::Internal, "factor set not Galois-stable");
        sigma[i] = it->second;
    }

    std::map<std::pair<uint32_t, std::string>, std::vector<size_t>> bucket;
    for (size_t i = 0; i < objs.size(); ++i)
        bucket[{objs[i].w, neb[i].label()}].push_back(i);

    // Factor series over a given field at a given precision, memoized on the
    // underlying two-character series; the cap bounds full-precision memory.
    auto obj_series = [&](const EisObj& o, uint32_t prec, const Ctx& field,
                          std::map<BaseKey, QExpansion>& memo, size_t cap) {
        if (o.e2) return e2_imprimitive(o.t, prec, field);
        BaseKey bk{o.psi, o.phi, o.w};
        auto it = memo.find(bk);
        if (it == memo.end()) {
            if (memo.size() >= cap) memo.clear();
            QExpansion base = eisenstein_qexp(pool[o.psi].prim, pool[o.phi].prim, o.w, prec, field);
            it = memo.emplace(bk, std::move(base)).first;
        }
        if (o.t == 1) return it->second;
        return v_op(it->second, uint32_t(o.t), prec);
    };

    // Phase 1: find a spanning plan at the vanishing-order bound; every
    // product is formed once over the generation field, screened there, and
    // only rank growth in the target space is recorded.
    const uint32_t B = sturm_;
    RowSpace gen_rows(Fgen, B);
    RowSpace small(F_, B);
    struct PlanStep {
        std::vector<size_t> combo;
        int32_t j;  // trace shift, or -1 for a direct row
    };
    std::vector<PlanStep> plan;
    std::set<std::vector<size_t>> seen;
    std::map<BaseKey, QExpansion> memo_b;
    bool done = false;

    auto orbit_canonical = [&](const std::vector<size_t>& combo) {
        std::vector<size_t> best = combo, cur = combo;
        for (uint32_t it = 1; it < R; ++it) {
            for (auto& oi : cur) oi = sigma[oi];
            std::vector<size_t> s = cur;
            std::sort(s.begin(), s.end());
            if (s < best) best = s;
        }
        return best;
    };

    auto consider = [&](const std::vector<size_t>& combo) {
        if (done) return;
        if (!seen.insert(orbit_canonical(combo)).second) return;
        QExpansion P = obj_series(objs[combo[0]], B, Fgen, memo_b, size_t(-1));
        for (size_t i = 1; i < combo.size(); ++i)
            P = P * obj_series(objs[combo[i]], B, Fgen, memo_b, size_t(-1));
        if (!gen_rows.insert(P)) return;  // dependent over the generation field
        if (!descended) {
            if (small.insert(P)) {
                plan.push_back({combo, -1});
                if (small.rank() == dim) done = true;
            }
            return;
        }
        for (uint32_t j = 0; j < R && !done; ++j) {
            if (small.insert(trace_row(P, j))) {
                plan.push_back({combo, int32_t(j)});
                if (small.rank() == dim) done = true;
            }
        }
    };

    const std::string chi_label = chi.label();
    for (size_t i = 0; i < objs.size() && !done; ++i)
        if (objs[i].w == k_ && neb[i].label() == chi_label) consider({i});
    if (!done) {
        for (size_t i = 0; i < objs.size() && !done; ++i) {
            if (objs[i].w >= k_) continue;
            auto it = bucket.find({k_ - objs[i].w, (chi * char_inverse(neb[i])).label()});
            if (it == bucket.end()) continue;
            for (size_t j : it->second) {
                if (j < i) continue;
                if (done) break;
                consider({i, j});
            }
        }
    }
    if (!done) {
        for (size_t i = 0; i < objs.size() && !done; ++i) {
            if (objs[i].w + 2 > k_) continue;
            DirichletChar rest_i = chi * char_inverse(neb[i]);
            for (size_t j = i; j < objs.size() && !done; ++j) {
                if (objs[i].w + objs[j].w + 1 > k_) continue;
                auto it = bucket.find(
                    {k_ - objs[i].w - objs[j].w, (rest_i * char_inverse(neb[j])).label()});
                if (it == bucket.end()) continue;
                for (size_t l : it->second) {
                    if (l < j) continue;
                    if (done) break;
                    consider({i, j, l});
                }
            }
        }
    }
    if (small.rank() != dim)
        fail(ErrorCode::SpanDeficient,
             "products of up to three series span " + std::to_string(small.rank()) + " of " +
                 std::to_string(dim) + " dimensions at level " + std::to_string(N_) + ", weight " +
                 std::to_string(k_));

    if (prec_ == B) {
        basis_ = std::move(small);
        return;
    }

    // Phase 2: replay the recorded plan at full precision.  Truncation
    // commutes with every step, so each replayed row extends a row that
    // already grew the rank and the inserts cannot fail.
    RowSpace full(F_, prec_);
    std::map<BaseKey, QExpansion> memo_full;
    std::vector<size_t> last;
    QExpansion P;
    for (const auto& step : plan) {
        if (step.combo != last) {
            P = obj_series(objs[step.combo[0]], prec_, Fgen, memo_full, 48);
            for (size_t i = 1; i < step.combo.size(); ++i)
                P = P * obj_series(objs[step.combo[i]], prec_, Fgen, memo_full, 48);
            last = step.combo;
        }
        QExpansion row = step.j < 0 ? P : trace_row(P, uint32_t(step.j));
        if (!full.insert(row)) fail(ErrorCode::Internal, "replayed generator became dependent");
    }
    if (full.rank() != dim) fail(ErrorCode::Internal, "full-precision rank mismatch");
    basis_ = std::move(full);
}

std::string ModFormSpace::cache_name() const {
    std::string lbl = chi_.value().label();
    for (auto& ch : lbl) {
        if (ch == ':') ch = 'c';
        if (ch == ',') ch = '-';
    }
    // Field degree is derived from the character, so the name omits it
    // unless the degree was forced above the automatic one.
    std::string rtag;
    if (F_->r() != char_field_degree(chi_.value(), p_)) rtag = "_r" + std::to_string(F_->r());
    return "basis_p" + std::to_string(p_) + "_N" + std::to_string(N_) + "_k" +
           std::to_string(k_) + "_chi" + lbl + "_prec" + std::to_string(prec_) + rtag + ".thdb";
}

namespace {
constexpr uint32_t kCacheMagic = 0x42444854u;  // "THDB"
constexpr uint32_t kCacheVersion = 1;
}  // namespace

bool ModFormSpace::load_cache(const std::string& dir) {
    std::vector<uint8_t> raw;
    if (!read_file(join_path(dir, cache_name()), raw)) return false;
    BinReader in(std::move(raw));
    if (in.u32() != kCacheMagic) fail(ErrorCode::CacheError, "bad cache magic");
    if (in.u32() != kCacheVersion) fail(ErrorCode::CacheError, "unsupported cache version");
    bool match = in.u64() == p_;
    match = in.u32() == F_->r() && match;
    match = in.u64() == N_ && match;
    match = in.u32() == k_ && match;
    match = in.str() == chi_.value().label() && match;
    match = in.u32() == prec_ && match;
    if (!match) fail(ErrorCode::CacheError, "cache entry does not match its parameters");
    uint32_t dim = in.u32();
    if (int64_t(dim) != dim_formula_)
        fail(ErrorCode::CacheError, "cached rank disagrees with the dimension formula");
    const uint32_t r = F_->r();
    RowSpace rs(F_, prec_);
    for (uint32_t i = 0; i < dim; ++i) {
        QExpansion f(F_, prec_);
        in.raw(f.data().data(), size_t(prec_) * r);
        for (uint8_t b : f.data())
            if (b >= p_) fail(ErrorCode::CacheError, "cache coefficient out of range");
        if (!rs.insert(f)) fail(ErrorCode::CacheError, "cached rows are dependent");
    }
    if (!in.at_end()) fail(ErrorCode::CacheError, "trailing bytes in cache entry");
    basis_ = std::move(rs);
    return true;
}

void ModFormSpace::save_cache(const std::string& dir) const {
    BinWriter w;
    w.u32(kCacheMagic);
    w.u32(kCacheVersion);
    w.u64(p_);
    w.u32(F_->r());
    w.u64(N_);
    w.u32(k_);
    w.str(chi_.value().label());
    w.u32(prec_);
    w.u32(basis_.rank());
    for (uint32_t i = 0; i < basis_.rank(); ++i) {
        const auto& row = basis_.row(i);
        w.raw(row.data(), row.size());
    }
    w.seal();
    atomic_write_file(join_path(dir, cache_name()), w.buffer());
}

}  // namespace thd
