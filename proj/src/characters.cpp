#include "characters.hpp"

#include <algorithm>
#include <sstream>

namespace thd {

namespace {

uint64_t crt_lift(uint64_t residue, uint64_t fmod, uint64_t N) {
    // x = residue mod fmod, x = 1 mod N/fmod (the two parts are coprime).
    if (N == fmod) return residue % N;
    uint64_t other = N / fmod;
    uint64_t finv = invmod_u64(fmod % other, other);
    uint64_t delta = (1 + other - residue % other) % other;
    uint64_t t = delta % other * finv % other;
    return (residue + fmod * t) % N;
}

uint64_t smallest_primitive_root(uint64_t m, uint64_t order) {
    for (uint64_t g = 2; g < m; ++g) {
        if (gcd_u64(g, m) != 1) continue;
        if (mult_order(g, m) == order) return g;
    }
    fail(ErrorCode::Internal, "no primitive root mod " + std::to_string(m));
}

uint64_t lcm_u64(uint64_t a, uint64_t b) { return a / gcd_u64(a, b) * b; }

// Exponent t with chi(x) = zeta_ord^t, for exps on the group's factors.
uint64_t value_exponent(const UnitGroup& G, const std::vector<uint64_t>& exps, uint64_t ord, uint64_t x) {
    auto d = G.dlog(x);
    const auto& f = G.factors();
    uint64_t t = 0;
    for (size_t i = 0; i < f.size(); ++i) {
        if (exps[i] == 0) continue;
        uint64_t ni = f[i].order;
        uint64_t oi = ni / gcd_u64(ni, exps[i]);
        uint64_t ui = exps[i] / (ni / oi);  // gcd(ui, oi) = 1
        t = (t + (ord / oi) * (ui % oi) % ord * (d[i] % oi)) % ord;
    }
    return t;
}

}  // namespace

UnitGroup::UnitGroup(uint64_t N) : N_(N) {
    if (N == 0) fail(ErrorCode::UsageError, "modulus must be positive");
    std::vector<std::pair<uint64_t, uint32_t>> pp;
    {
        uint64_t n = N;
        for (uint64_t p : distinct_prime_factors(N)) {
            uint32_t e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            pp.push_back({p, e});
        }
    }
    std::sort(pp.begin(), pp.end());
    for (auto [p, e] : pp) {
        uint64_t fmod = 1;
        for (uint32_t i = 0; i < e; ++i) fmod *= p;
        if (p == 2) {
            if (e == 1) continue;  // (Z/2)^* is trivial
            if (e == 2) {
                f_.push_back({p, e, fmod, crt_lift(3, fmod, N), 2, true});
                std::vector<uint32_t> tab(fmod, 0);
                tab[3] = 1;
                tables_.push_back(std::move(tab));
                continue;
            }
            f_.push_back({p, e, fmod, crt_lift(fmod - 1, fmod, N), 2, true});
            f_.push_back({p, e, fmod, crt_lift(5, fmod, N), fmod / 4, false});
            std::vector<uint32_t> sign_tab(fmod, 0), five_tab(fmod, 0);
            uint64_t v = 1;
            for (uint64_t t = 0; t < fmod / 4; ++t) {
                sign_tab[v] = 0;
                five_tab[v] = uint32_t(t);
                sign_tab[fmod - v] = 1;
                five_tab[fmod - v] = uint32_t(t);
                v = v * 5 % fmod;
            }
            tables_.push_back(std::move(sign_tab));
            tables_.push_back(std::move(five_tab));
            continue;
        }
        uint64_t order = fmod / p * (p - 1);
        uint64_t g = smallest_primitive_root(fmod, order);
        std::vector<uint32_t> tab(fmod, 0);
        uint64_t v = 1;
        for (uint64_t j = 0; j < order; ++j) {
            tab[v] = uint32_t(j);
            v = v * g % fmod;
        }
        f_.push_back({p, e, fmod, crt_lift(g, fmod, N), order, false});
        tables_.push_back(std::move(tab));
    }
}

std::vector<uint64_t> UnitGroup::dlog(uint64_t x) const {
    x %= N_;
    if (N_ > 1 && gcd_u64(x, N_) != 1) fail(ErrorCode::UsageError, "dlog of a non-unit");
    std::vector<uint64_t> out(f_.size());
    for (size_t i = 0; i < f_.size(); ++i) out[i] = tables_[i][x % f_[i].modulus];
    return out;
}

// ---------- DirichletChar ----------

DirichletChar::DirichletChar(std::shared_ptr<const UnitGroup> G, std::vector<uint64_t> exps)
    : G_(std::move(G)), exps_(std::move(exps)) {
    const auto& f = G_->factors();
    if (exps_.size() != f.size())
        fail(ErrorCode::BadCharacterLabel, "expected " + std::to_string(f.size()) + " exponents for modulus " +
                                               std::to_string(G_->N()));
    for (size_t i = 0; i < f.size(); ++i)
        if (exps_[i] >= f[i].order) fail(ErrorCode::BadCharacterLabel, "exponent exceeds factor order");
}

DirichletChar DirichletChar::trivial(std::shared_ptr<const UnitGroup> G) {
    std::vector<uint64_t> e(G->factors().size(), 0);
    return DirichletChar(std::move(G), std::move(e));
}

DirichletChar DirichletChar::parse(std::shared_ptr<const UnitGroup> G, const std::string& label) {
    if (label == "trivial") return trivial(std::move(G));
    auto colon = label.find(':');
    if (colon == std::string::npos)
        fail(ErrorCode::BadCharacterLabel, "expected 'trivial' or '<modulus>:<e1>,<e2>,...'");
    uint64_t mod = 0;
    try {
        mod = std::stoull(label.substr(0, colon));
    } catch (...) {
        fail(ErrorCode::BadCharacterLabel, "bad modulus in '" + label + "'");
    }
    if (mod != G->N())
        fail(ErrorCode::BadCharacterLabel, "label modulus " + std::to_string(mod) + " does not match level " +
                                               std::to_string(G->N()));
    std::vector<uint64_t> exps;
    std::istringstream is(label.substr(colon + 1));
    std::string tok;
    while (std::getline(is, tok, ',')) {
        try {
            size_t pos = 0;
            uint64_t e = std::stoull(tok, &pos);
            if (pos != tok.size()) throw std::invalid_argument(tok);
            exps.push_back(e);
        } catch (...) {
            fail(ErrorCode::BadCharacterLabel, "bad exponent '" + tok + "'");
        }
    }
    return DirichletChar(std::move(G), std::move(exps));
}

uint64_t DirichletChar::order() const {
    uint64_t o = 1;
    const auto& f = G_->factors();
    for (size_t i = 0; i < f.size(); ++i) {
        if (exps_[i] == 0) continue;
        o = lcm_u64(o, f[i].order / gcd_u64(f[i].order, exps_[i]));
    }
    return o;
}

uint64_t DirichletChar::conductor() const {
    const auto& f = G_->factors();
    uint64_t cond = 1;
    bool sign_nontriv = false;
    uint64_t five_order = 1;
    for (size_t i = 0; i < f.size(); ++i) {
        if (exps_[i] == 0) continue;
        uint64_t oi = f[i].order / gcd_u64(f[i].order, exps_[i]);
        if (oi == 1) continue;
        if (f[i].prime == 2) {
            if (f[i].is_sign)
                sign_nontriv = true;
            else
                five_order = std::max(five_order, oi);
            continue;
        }
        uint64_t q = f[i].prime;
        uint32_t a = 0;
        for (uint64_t t = oi; t % q == 0; t /= q) ++a;
        uint64_t c = q;
        for (uint32_t j = 0; j < a; ++j) c *= q;
        cond *= c;
    }
    if (five_order > 1)
        cond *= 4 * five_order;
    else if (sign_nontriv)
        cond *= 4;
    return cond;
}

bool DirichletChar::is_even() const {
    if (G_->N() <= 2) return true;
    uint64_t ord = order();
    return value_exponent(*G_, exps_, ord, G_->N() - 1) == 0;
}

bool DirichletChar::kernel_contains(uint64_t x) const {
    uint64_t ord = order();
    return value_exponent(*G_, exps_, ord, x % G_->N()) == 0;
}

bool DirichletChar::is_trivial() const {
    return std::all_of(exps_.begin(), exps_.end(), [](uint64_t e) { return e == 0; });
}

std::string DirichletChar::label() const {
    std::ostringstream os;
    os << G_->N() << ":";
    for (size_t i = 0; i < exps_.size(); ++i) {
        if (i) os << ",";
        os << exps_[i];
    }
    if (exps_.empty()) os << "0";
    return os.str();
}

DirichletChar DirichletChar::operator*(const DirichletChar& o) const {
    if (G_->N() != o.G_->N()) fail(ErrorCode::ContextMismatch, "characters on different moduli");
    std::vector<uint64_t> e(exps_.size());
    for (size_t i = 0; i < e.size(); ++i) e[i] = (exps_[i] + o.exps_[i]) % G_->factors()[i].order;
    return DirichletChar(G_, std::move(e));
}

DirichletChar DirichletChar::power(uint64_t t) const {
    std::vector<uint64_t> e(exps_.size());
    for (size_t i = 0; i < e.size(); ++i) {
        uint64_t n = G_->factors()[i].order;
        e[i] = exps_[i] % n * (t % n) % n;
    }
    return DirichletChar(G_, std::move(e));
}

bool DirichletChar::operator==(const DirichletChar& o) const {
    return G_->N() == o.G_->N() && exps_ == o.exps_;
}

DirichletChar DirichletChar::induce(std::shared_ptr<const UnitGroup> G_big) const {
    uint64_t N_big = G_big->N();
    uint64_t N_small = G_->N();
    if (N_big % N_small != 0) fail(ErrorCode::UsageError, "induction target is not a multiple modulus");
    uint64_t ord = order();
    const auto& fb = G_big->factors();
    std::vector<uint64_t> e(fb.size(), 0);
    for (size_t i = 0; i < fb.size(); ++i) {
        // chi(g_i mod N_small) = zeta_ord^t, rewritten in terms of zeta_{n_i};
        // the value order divides n_i because g_i^{n_i} = 1 mod N_big.
        uint64_t t = value_exponent(*G_, exps_, ord, fb[i].gen % N_small);
        uint64_t ni = fb[i].order;
        if (t % ord * ni % ord != 0) fail(ErrorCode::Internal, "induced exponent not integral");
        e[i] = t * ni / ord % ni;
    }
    return DirichletChar(std::move(G_big), std::move(e));
}

CycRat DirichletChar::value_cyc(const CycPtr& cyc, uint64_t n) const {
    n %= G_->N();
    if (G_->N() > 1 && gcd_u64(n, G_->N()) != 1) return cyc->zero();
    uint64_t ord = order();
    if (cyc->m() % ord != 0) fail(ErrorCode::UsageError, "cyclotomic order not divisible by character order");
    uint64_t t = value_exponent(*G_, exps_, ord, n);
    return cyc->zeta_pow(t % ord * (cyc->m() / ord));
}

std::vector<uint8_t> DirichletChar::value_table(const Ctx& field) const {
    uint64_t N = G_->N();
    uint32_t r = field->r();
    uint64_t ord = order();
    std::vector<uint8_t> table(size_t(N) * r, 0);
    Fq zeta = field->root_of_unity(ord);
    std::vector<Fq> zpow(ord, field->one());
    for (uint64_t j = 1; j < ord; ++j) zpow[j] = zpow[j - 1] * zeta;
    if (N == 1) {
        field->encode(field->one(), &table[0]);
        return table;
    }
    for (uint64_t x = 1; x < N; ++x) {
        if (gcd_u64(x, N) != 1) continue;
        uint64_t t = value_exponent(*G_, exps_, ord, x);
        field->encode(zpow[t], &table[size_t(x) * r]);
    }
    return table;
}

Fq DirichletChar::value_fq(const Ctx& field, uint64_t n) const {
    n %= G_->N();
    if (G_->N() > 1 && gcd_u64(n, G_->N()) != 1) return field->zero();
    uint64_t ord = order();
    uint64_t t = value_exponent(*G_, exps_, ord, n);
    return field->root_of_unity(ord).pow(t);
}

DirichletChar DirichletChar::primitive_part() const {
    uint64_t c = conductor();
    auto Gc = std::make_shared<UnitGroup>(c);
    const auto& small = Gc->factors();
    const auto& big = G_->factors();
    std::vector<uint64_t> exps(small.size(), 0);
    for (size_t i = 0; i < small.size(); ++i) {
        uint64_t q = small[i].prime;
        // chi restricted to the q-part of the big group.
        std::vector<uint64_t> masked(exps_.size(), 0);
        for (size_t k = 0; k < big.size(); ++k)
            if (big[k].prime == q) masked[k] = exps_[k];
        DirichletChar local(G_, masked);
        uint64_t om = local.order();
        // Lift the small generator to a unit of the big group: its residue
        // mod q^{c_q} determines the local value.
        uint64_t g_res = small[i].gen % small[i].modulus;
        size_t jbig = 0;
        while (big[jbig].prime != q) ++jbig;
        uint64_t y = crt_lift(g_res % big[jbig].modulus, big[jbig].modulus, G_->N());
        uint64_t t = value_exponent(*G_, masked, om, y);
        // zeta_om^t lies in mu_np for np = small factor order.
        uint64_t np = small[i].order;
        uint64_t num = t % om * np;
        if (num % om != 0) fail(ErrorCode::Internal, "restriction exponent not integral");
        exps[i] = (num / om) % np;
    }
    return DirichletChar(Gc, std::move(exps));
}

uint32_t char_field_degree(const DirichletChar& chi, uint64_t p) {
    uint64_t n = chi.order();
    while (n % p == 0) n /= p;
    if (n == 1) return 1;
    return uint32_t(mult_order(p % n, n));
}

std::vector<DirichletChar> enumerate_prime_to_p_chars(std::shared_ptr<const UnitGroup> G, uint64_t p) {
    const auto& f = G->factors();
    std::vector<DirichletChar> out;
    std::vector<uint64_t> exps(f.size(), 0);
    while (true) {
        DirichletChar chi(G, exps);
        if (chi.order() % p != 0) out.push_back(chi);
        size_t i = 0;
        for (; i < f.size(); ++i) {
            if (++exps[i] < f[i].order) break;
            exps[i] = 0;
        }
        if (i == f.size()) break;
    }
    return out;
}

}  // namespace thd
