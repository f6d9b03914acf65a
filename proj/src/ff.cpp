#include "ff.hpp"

#include <algorithm>
#include <sstream>

namespace thd {

namespace {

void poly_trim(PolyFp& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// a = q*b + r with deg r < deg b; b non-zero.
void poly_divmod(const PolyFp& a, const PolyFp& b, uint64_t p, PolyFp& q, PolyFp& r) {
    r = a;
    poly_trim(r);
    q.clear();
    if (r.size() < b.size()) return;
    q.assign(r.size() - b.size() + 1, 0);
    uint64_t inv_lead = invmod_u64(b.back(), p);
    for (size_t k = r.size(); k-- >= b.size();) {
        if (r[k]) {
            uint64_t coef = mulmod_u32(r[k], inv_lead, p);
            q[k - (b.size() - 1)] = uint32_t(coef);
            for (size_t i = 0; i < b.size(); ++i) {
                size_t idx = k - (b.size() - 1) + i;
                r[idx] = uint32_t((r[idx] + p - mulmod_u32(coef, b[i], p)) % p);
            }
        }
        if (k == b.size() - 1) break;
    }
    poly_trim(r);
}

PolyFp poly_mod(const PolyFp& a, const PolyFp& m, uint64_t p) {
    PolyFp q, r;
    if (a.size() < m.size()) {
        r = a;
        poly_trim(r);
        return r;
    }
    poly_divmod(a, m, p, q, r);
    return r;
}

PolyFp poly_mul_plain(const PolyFp& a, const PolyFp& b, uint64_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<uint64_t> acc(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) acc[i + j] = (acc[i + j] + uint64_t(a[i]) * b[j]) % p;
    }
    PolyFp c(acc.begin(), acc.end());
    poly_trim(c);
    return c;
}

}  // namespace

PolyFp poly_mulmod_fp(const PolyFp& a, const PolyFp& b, const PolyFp& mod, uint64_t p) {
    return poly_mod(poly_mul_plain(a, b, p), mod, p);
}

PolyFp poly_powmod_fp(const PolyFp& base, uint64_t exp, const PolyFp& mod, uint64_t p) {
    PolyFp acc = {1};
    PolyFp b = poly_mod(base, mod, p);
    while (exp) {
        if (exp & 1) acc = poly_mulmod_fp(acc, b, mod, p);
        b = poly_mulmod_fp(b, b, mod, p);
        exp >>= 1;
    }
    return acc;
}

PolyFp poly_gcd_fp(PolyFp a, PolyFp b, uint64_t p) {
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        PolyFp q, r;
        poly_divmod(a, b, p, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        uint64_t lead_inv = invmod_u64(a.back(), p);
        for (auto& c : a) c = uint32_t(mulmod_u32(c, lead_inv, p));
    }
    return a;
}

bool poly_irreducible_fp(const PolyFp& f, uint64_t p) {
    size_t r = f.size() - 1;
    if (r == 0) return false;
    if (r == 1) return true;
    if (f[0] == 0) return false;  // divisible by x
    PolyFp x = {0, 1};
    // Rabin: x^(p^r) == x mod f, and gcd(x^(p^(r/s)) - x, f) = 1 for prime s | r.
    auto frob_iter = [&](uint32_t k) {
        PolyFp acc = x;
        for (uint32_t i = 0; i < k; ++i) acc = poly_powmod_fp(acc, p, f, p);
        return acc;
    };
    auto minus_x = [&](PolyFp g) {
        if (g.size() < 2) g.resize(2, 0);
        g[1] = uint32_t((g[1] + p - 1) % p);
        poly_trim(g);
        return g;
    };
    PolyFp diff = minus_x(frob_iter(uint32_t(r)));
    if (!diff.empty()) return false;
    for (uint64_t s : distinct_prime_factors(r)) {
        PolyFp d = minus_x(frob_iter(uint32_t(r / s)));
        PolyFp g = poly_gcd_fp(d, f, p);
        if (g.size() != 1) return false;
    }
    return true;
}

// ---------- FieldCtx ----------

Ctx FieldCtx::make_checked(uint64_t p, uint32_t r, bool internal) {
    if (!is_prime_u64(p)) fail(ErrorCode::NotPrime, "characteristic " + std::to_string(p) + " is not prime");
    if (internal) {
        if (r < 1 || r > 64) fail(ErrorCode::DegreeTooLarge, "extension degree " + std::to_string(r));
    } else {
        if (p < 5 || p >= 256)
            fail(ErrorCode::UnsupportedCharacteristic, "p = " + std::to_string(p) + " outside supported range");
        if (r < 1 || r > 8) fail(ErrorCode::DegreeTooLarge, "extension degree " + std::to_string(r) + " exceeds 8");
    }
    if (p >= 256) fail(ErrorCode::UnsupportedCharacteristic, "p = " + std::to_string(p) + " too large");
    uint64_t q = 1;
    for (uint32_t i = 0; i < r; ++i) {
        if (q > (uint64_t(1) << 62) / p) fail(ErrorCode::DegreeTooLarge, "field order exceeds 2^62");
        q *= p;
    }

    auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx());
    ctx->p_ = p;
    ctx->r_ = r;
    ctx->q_ = q;

    if (r == 1) {
        ctx->mod_ = {0, 1};  // x
        return ctx;
    }
    // Candidate moduli x^r + (base-p digits of v), v ascending; first irreducible wins.
    for (uint64_t v = 0; v < q; ++v) {
        PolyFp f(r + 1, 0);
        uint64_t t = v;
        for (uint32_t i = 0; i < r; ++i) {
            f[i] = uint32_t(t % p);
            t /= p;
        }
        f[r] = 1;
        if (poly_irreducible_fp(f, p)) {
            ctx->mod_ = std::move(f);
            return ctx;
        }
    }
    fail(ErrorCode::Internal, "no irreducible modulus found");
}

Ctx FieldCtx::make(uint64_t p, uint32_t r) { return make_checked(p, r, false); }
Ctx FieldCtx::make_internal(uint64_t p, uint32_t r) { return make_checked(p, r, true); }

bool FieldCtx::same_field(const FieldCtx& o) const {
    return p_ == o.p_ && r_ == o.r_ && mod_ == o.mod_;
}

Fq FieldCtx::zero() const { return Fq(shared_from_this(), std::vector<uint8_t>(r_, 0)); }

Fq FieldCtx::one() const { return from_int(1); }

Fq FieldCtx::from_int(int64_t v) const {
    std::vector<uint8_t> c(r_, 0);
    c[0] = uint8_t(mod_norm(v, int64_t(p_)));
    return Fq(shared_from_this(), std::move(c));
}

Fq FieldCtx::gen() const {
    std::vector<uint8_t> c(r_, 0);
    if (r_ >= 2) c[1] = 1;
    return Fq(shared_from_this(), std::move(c));
}

Fq FieldCtx::from_canonical_uint(uint64_t v) const {
    std::vector<uint8_t> c(r_, 0);
    for (uint32_t i = 0; i < r_; ++i) {
        c[i] = uint8_t(v % p_);
        v /= p_;
    }
    if (v) fail(ErrorCode::UsageError, "canonical value out of range");
    return Fq(shared_from_this(), std::move(c));
}

Fq FieldCtx::primitive_element() const {
    if (primitive_.empty()) {
        if (q1_primes_.empty()) q1_primes_ = distinct_prime_factors(q_ - 1);
        for (uint64_t v = 2; v < q_; ++v) {
            Fq g = from_canonical_uint(v);
            bool ok = true;
            for (uint64_t s : q1_primes_) {
                if (g.pow((q_ - 1) / s) == one()) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                primitive_ = g.coeffs();
                break;
            }
        }
        if (primitive_.empty()) fail(ErrorCode::Internal, "no primitive element");
    }
    return Fq(shared_from_this(), primitive_);
}

Fq FieldCtx::root_of_unity(uint64_t n) const {
    if (n == 0 || (q_ - 1) % n != 0)
        fail(ErrorCode::FieldTooSmall,
             "no primitive " + std::to_string(n) + "-th root of unity in F_" + std::to_string(p_) + "^" +
                 std::to_string(r_));
    return primitive_element().pow((q_ - 1) / n);
}

void FieldCtx::encode(const Fq& a, uint8_t* out) const {
    for (uint32_t i = 0; i < r_; ++i) out[i] = a.coeffs()[i];
}

Fq FieldCtx::decode(const uint8_t* in) const {
    std::vector<uint8_t> c(in, in + r_);
    for (auto b : c)
        if (b >= p_) fail(ErrorCode::CacheError, "byte out of range for field element");
    return Fq(shared_from_this(), std::move(c));
}

// ---------- Fq ----------

namespace {
void check_ctx(const Ctx& a, const Ctx& b) {
    if (a.get() == b.get()) return;
    if (!a || !b || !a->same_field(*b)) fail(ErrorCode::ContextMismatch, "elements from different fields");
}
}  // namespace

Fq::Fq(Ctx ctx, std::vector<uint8_t> coeffs) : ctx_(std::move(ctx)), c_(std::move(coeffs)) {}

bool Fq::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](uint8_t x) { return x == 0; });
}

bool Fq::operator==(const Fq& o) const {
    check_ctx(ctx_, o.ctx_);
    return c_ == o.c_;
}

Fq Fq::operator+(const Fq& o) const {
    check_ctx(ctx_, o.ctx_);
    uint64_t p = ctx_->p();
    std::vector<uint8_t> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = uint8_t((c_[i] + o.c_[i]) % p);
    return Fq(ctx_, std::move(c));
}

Fq Fq::operator-(const Fq& o) const {
    check_ctx(ctx_, o.ctx_);
    uint64_t p = ctx_->p();
    std::vector<uint8_t> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = uint8_t((c_[i] + p - o.c_[i]) % p);
    return Fq(ctx_, std::move(c));
}

Fq Fq::operator-() const {
    uint64_t p = ctx_->p();
    std::vector<uint8_t> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = uint8_t((p - c_[i]) % p);
    return Fq(ctx_, std::move(c));
}

Fq Fq::operator*(const Fq& o) const {
    check_ctx(ctx_, o.ctx_);
    uint64_t p = ctx_->p();
    PolyFp a(c_.begin(), c_.end()), b(o.c_.begin(), o.c_.end());
    PolyFp prod = poly_mulmod_fp(a, b, ctx_->modulus(), p);
    std::vector<uint8_t> c(c_.size(), 0);
    for (size_t i = 0; i < prod.size(); ++i) c[i] = uint8_t(prod[i]);
    return Fq(ctx_, std::move(c));
}

Fq Fq::inv() const {
    if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero");
    uint64_t p = ctx_->p();
    // Extended Euclid in F_p[x]: s * this == gcd(this, modulus) = const.
    PolyFp r0 = ctx_->modulus();
    PolyFp r1(c_.begin(), c_.end());
    while (!r1.empty() && r1.back() == 0) r1.pop_back();
    PolyFp s0 = {}, s1 = {1};
    while (!r1.empty()) {
        PolyFp q, rem;
        poly_divmod(r0, r1, p, q, rem);
        PolyFp qs1 = poly_mul_plain(q, s1, p);
        PolyFp s2(std::max(s0.size(), qs1.size()), 0);
        for (size_t i = 0; i < s2.size(); ++i) {
            uint64_t v0 = i < s0.size() ? s0[i] : 0;
            uint64_t v1 = i < qs1.size() ? qs1[i] : 0;
            s2[i] = uint32_t((v0 + p - v1) % p);
        }
        while (!s2.empty() && s2.back() == 0) s2.pop_back();
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.size() != 1) fail(ErrorCode::Internal, "gcd with modulus not constant");
    uint64_t scale = invmod_u64(r0[0], p);
    std::vector<uint8_t> c(c_.size(), 0);
    for (size_t i = 0; i < s0.size() && i < c.size(); ++i) c[i] = uint8_t(mulmod_u32(s0[i], scale, p));
    return Fq(ctx_, std::move(c));
}

Fq Fq::operator/(const Fq& o) const { return *this * o.inv(); }

Fq Fq::pow(uint64_t e) const {
    Fq acc = ctx_->one();
    Fq b = *this;
    while (e) {
        if (e & 1) acc = acc * b;
        b = b * b;
        e >>= 1;
    }
    return acc;
}

Fq Fq::frobenius() const { return pow(ctx_->p()); }

uint64_t Fq::canonical_uint() const {
    uint64_t v = 0;
    for (size_t i = c_.size(); i-- > 0;) v = v * ctx_->p() + c_[i];
    return v;
}

std::string Fq::to_string() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ",";
        os << int(c_[i]);
    }
    os << "]";
    return os.str();
}

std::vector<Fq> poly_roots(const Ctx& ctx, const std::vector<Fq>& poly) {
    if (ctx->q() > (uint64_t(1) << 22))
        fail(ErrorCode::DegreeTooLarge, "exhaustive root search capped at field order 2^22");
    std::vector<Fq> roots;
    for (uint64_t v = 0; v < ctx->q(); ++v) {
        Fq x = ctx->from_canonical_uint(v);
        Fq acc = ctx->zero();
        for (size_t i = poly.size(); i-- > 0;) acc = acc * x + poly[i];
        if (acc.is_zero()) roots.push_back(x);
    }
    return roots;
}

}  // namespace thd
