#include "qseries.hpp"

#include <algorithm>
#include <cstring>

namespace thd {

// ---------- byte kernels ----------

namespace {

template <uint32_t P>
void axpy_impl(uint8_t* y, const uint8_t* x, uint32_t c, size_t n) {
    for (size_t i = 0; i < n; ++i) y[i] = uint8_t((y[i] + c * x[i]) % P);
}

template <uint32_t P>
void scale_impl(uint8_t* y, uint32_t c, size_t n) {
    for (size_t i = 0; i < n; ++i) y[i] = uint8_t(c * y[i] % P);
}

}  // namespace

void axpy_fp(uint8_t* y, const uint8_t* x, uint32_t c, size_t n, uint32_t p) {
    c %= p;
    if (c == 0) return;
    switch (p) {
        case 5: axpy_impl<5>(y, x, c, n); break;
        case 7: axpy_impl<7>(y, x, c, n); break;
        case 11: axpy_impl<11>(y, x, c, n); break;
        case 13: axpy_impl<13>(y, x, c, n); break;
        default:
            for (size_t i = 0; i < n; ++i) y[i] = uint8_t((y[i] + c * x[i]) % p);
    }
}

void scale_fp(uint8_t* y, uint32_t c, size_t n, uint32_t p) {
    c %= p;
    if (c == 1) return;
    if (c == 0) {
        std::memset(y, 0, n);
        return;
    }
    switch (p) {
        case 5: scale_impl<5>(y, c, n); break;
        case 7: scale_impl<7>(y, c, n); break;
        case 11: scale_impl<11>(y, c, n); break;
        case 13: scale_impl<13>(y, c, n); break;
        default:
            for (size_t i = 0; i < n; ++i) y[i] = uint8_t(c * y[i] % p);
    }
}

// ---------- convolution ----------

namespace {

constexpr uint32_t NTT_P = 998244353;  // 119 * 2^23 + 1
constexpr uint32_t NTT_G = 3;

uint32_t ntt_pow(uint32_t b, uint64_t e) { return uint32_t(powmod_u64(b, e, NTT_P)); }

void ntt(std::vector<uint32_t>& a, bool inverse) {
    size_t n = a.size();
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        uint32_t w = ntt_pow(NTT_G, (NTT_P - 1) / len);
        if (inverse) w = ntt_pow(w, NTT_P - 2);
        for (size_t i = 0; i < n; i += len) {
            uint64_t wn = 1;
            for (size_t j = 0; j < len / 2; ++j) {
                uint32_t u = a[i + j];
                uint32_t v = uint32_t(wn * a[i + j + len / 2] % NTT_P);
                a[i + j] = u + v < NTT_P ? u + v : u + v - NTT_P;
                a[i + j + len / 2] = u >= v ? u - v : u + NTT_P - v;
                wn = wn * w % NTT_P;
            }
        }
    }
    if (inverse) {
        uint64_t ninv = ntt_pow(uint32_t(n % NTT_P), NTT_P - 2);
        for (auto& x : a) x = uint32_t(x * ninv % NTT_P);
    }
}

}  // namespace

void convolve_fp(const uint8_t* a, size_t na, const uint8_t* b, size_t nb, uint8_t* out, size_t out_len,
                 uint32_t p) {
    std::memset(out, 0, out_len);
    size_t ea = std::min(na, out_len), eb = std::min(nb, out_len);
    while (ea && a[ea - 1] == 0) --ea;
    while (eb && b[eb - 1] == 0) --eb;
    if (ea == 0 || eb == 0) return;
    size_t full = ea + eb - 1;
    size_t need = std::min(full, out_len);

    // NTT validity: wrapped sums stay below the transform modulus.
    bool ntt_ok = uint64_t(p - 1) * (p - 1) * std::min(ea, eb) < NTT_P;
    bool use_ntt = ntt_ok && uint64_t(ea) * eb > (1u << 16);

    if (!use_ntt) {
        std::vector<uint64_t> acc(need, 0);
        for (size_t i = 0; i < ea && i < need; ++i) {
            if (!a[i]) continue;
            size_t jmax = std::min(eb, need - i);
            uint64_t ai = a[i];
            for (size_t j = 0; j < jmax; ++j) acc[i + j] += ai * b[j];
        }
        for (size_t k = 0; k < need; ++k) out[k] = uint8_t(acc[k] % p);
        return;
    }

    size_t L = 1;
    while (L < full) L <<= 1;
    std::vector<uint32_t> fa(L, 0), fb(L, 0);
    for (size_t i = 0; i < ea; ++i) fa[i] = a[i];
    for (size_t j = 0; j < eb; ++j) fb[j] = b[j];
    ntt(fa, false);
    ntt(fb, false);
    for (size_t i = 0; i < L; ++i) fa[i] = uint32_t(uint64_t(fa[i]) * fb[i] % NTT_P);
    ntt(fa, true);
    for (size_t k = 0; k < need; ++k) out[k] = uint8_t(fa[k] % p);
}

// ---------- QExpansion ----------

QExpansion::QExpansion(Ctx ctx, uint32_t prec)
    : ctx_(std::move(ctx)), prec_(prec), data_(size_t(prec) * ctx_->r(), 0) {}

Fq QExpansion::coeff(uint32_t n) const {
    if (n >= prec_) fail(ErrorCode::InsufficientPrecision, "coefficient index beyond precision");
    return ctx_->decode(&data_[size_t(n) * ctx_->r()]);
}

void QExpansion::set_coeff(uint32_t n, const Fq& v) {
    if (n >= prec_) fail(ErrorCode::InsufficientPrecision, "coefficient index beyond precision");
    ctx_->encode(v, &data_[size_t(n) * ctx_->r()]);
}

void QExpansion::set_coeff_int(uint32_t n, int64_t v) { set_coeff(n, ctx_->from_int(v)); }

bool QExpansion::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](uint8_t b) { return b == 0; });
}

QExpansion QExpansion::truncate(uint32_t new_prec) const {
    if (new_prec > prec_) fail(ErrorCode::InsufficientPrecision, "cannot extend precision by truncation");
    QExpansion out(ctx_, new_prec);
    std::copy(data_.begin(), data_.begin() + size_t(new_prec) * ctx_->r(), out.data_.begin());
    return out;
}

namespace {
void check_same(const QExpansion& a, const QExpansion& b) {
    if (!a.ctx() || !b.ctx() || !a.ctx()->same_field(*b.ctx()))
        fail(ErrorCode::ContextMismatch, "series over different fields");
}
}  // namespace

QExpansion QExpansion::operator+(const QExpansion& o) const {
    check_same(*this, o);
    uint32_t pr = std::min(prec_, o.prec_);
    uint64_t p = ctx_->p();
    QExpansion out(ctx_, pr);
    size_t nb = size_t(pr) * ctx_->r();
    for (size_t i = 0; i < nb; ++i) out.data_[i] = uint8_t((data_[i] + o.data_[i]) % p);
    return out;
}

QExpansion QExpansion::operator-(const QExpansion& o) const {
    check_same(*this, o);
    uint32_t pr = std::min(prec_, o.prec_);
    uint64_t p = ctx_->p();
    QExpansion out(ctx_, pr);
    size_t nb = size_t(pr) * ctx_->r();
    for (size_t i = 0; i < nb; ++i) out.data_[i] = uint8_t((data_[i] + p - o.data_[i]) % p);
    return out;
}

QExpansion QExpansion::scaled(const Fq& c) const {
    uint32_t r = ctx_->r();
    QExpansion out(ctx_, prec_);
    if (r == 1) {
        out.data_ = data_;
        scale_fp(out.data_.data(), c.coeffs()[0], out.data_.size(), uint32_t(ctx_->p()));
        return out;
    }
    for (uint32_t n = 0; n < prec_; ++n) out.set_coeff(n, coeff(n) * c);
    return out;
}

QExpansion QExpansion::operator*(const QExpansion& o) const {
    check_same(*this, o);
    uint32_t pr = std::min(prec_, o.prec_);
    uint32_t r = ctx_->r();
    uint32_t p = uint32_t(ctx_->p());
    QExpansion out(ctx_, pr);
    if (pr == 0) return out;

    if (r == 1) {
        convolve_fp(data_.data(), prec_, o.data_.data(), o.prec_, out.data_.data(), pr, p);
        return out;
    }

    // Lane decomposition: convolve per pair of polynomial coordinates, then
    // reduce x-degrees >= r with the field modulus.
    std::vector<std::vector<uint8_t>> la(r, std::vector<uint8_t>(pr)), lb(r, std::vector<uint8_t>(pr));
    for (uint32_t n = 0; n < pr; ++n)
        for (uint32_t j = 0; j < r; ++j) {
            la[j][n] = data_[size_t(n) * r + j];
            lb[j][n] = o.data_[size_t(n) * r + j];
        }
    std::vector<std::vector<uint8_t>> xlane(2 * r - 1, std::vector<uint8_t>(pr, 0));
    std::vector<uint8_t> tmp(pr);
    for (uint32_t i = 0; i < r; ++i)
        for (uint32_t j = 0; j < r; ++j) {
            convolve_fp(la[i].data(), pr, lb[j].data(), pr, tmp.data(), pr, p);
            axpy_fp(xlane[i + j].data(), tmp.data(), 1, pr, p);
        }
    // Reduction table: x^t = sum_s red[t-r][s] x^s for t in [r, 2r-2].
    const auto& m = ctx_->modulus();
    std::vector<std::vector<uint32_t>> red;
    std::vector<uint32_t> cur(r);
    for (uint32_t s = 0; s < r; ++s) cur[s] = uint32_t((p - m[s]) % p);  // x^r
    red.push_back(cur);
    for (uint32_t t = r + 1; t <= 2 * r - 2; ++t) {
        std::vector<uint32_t> nxt(r, 0);
        uint32_t top = cur[r - 1];
        for (uint32_t s = r; s-- > 1;) nxt[s] = cur[s - 1];
        nxt[0] = 0;
        if (top)
            for (uint32_t s = 0; s < r; ++s) nxt[s] = uint32_t((nxt[s] + uint64_t(top) * ((p - m[s]) % p)) % p);
        red.push_back(nxt);
        cur = std::move(nxt);
    }
    for (uint32_t t = r; t <= 2 * r - 2; ++t)
        for (uint32_t s = 0; s < r; ++s)
            if (red[t - r][s]) axpy_fp(xlane[s].data(), xlane[t].data(), red[t - r][s], pr, p);
    for (uint32_t n = 0; n < pr; ++n)
        for (uint32_t j = 0; j < r; ++j) out.data_[size_t(n) * r + j] = xlane[j][n];
    return out;
}

bool QExpansion::operator==(const QExpansion& o) const {
    check_same(*this, o);
    return prec_ == o.prec_ && data_ == o.data_;
}

QExpansion theta_op(const QExpansion& f) {
    const Ctx& ctx = f.ctx();
    uint32_t r = ctx->r(), p = uint32_t(ctx->p());
    QExpansion out(ctx, f.prec());
    out.data() = f.data();
    for (uint32_t n = 0; n < f.prec(); ++n) scale_fp(&out.data()[size_t(n) * r], n % p, r, p);
    return out;
}

QExpansion v_op(const QExpansion& f, uint32_t m, uint32_t out_prec) {
    if (m == 0) fail(ErrorCode::UsageError, "substitution exponent must be positive");
    uint32_t needed = (out_prec + m - 1) / m;
    if (f.prec() < needed)
        fail(ErrorCode::InsufficientPrecision, "q -> q^" + std::to_string(m) + " needs input precision " +
                                                   std::to_string(needed) + ", have " + std::to_string(f.prec()));
    const Ctx& ctx = f.ctx();
    uint32_t r = ctx->r();
    QExpansion out(ctx, out_prec);
    for (uint32_t j = 0; uint64_t(j) * m < out_prec; ++j)
        std::memcpy(&out.data()[size_t(j) * m * r], &f.data()[size_t(j) * r], r);
    return out;
}

QExpansion u_op(const QExpansion& f, uint32_t ell) {
    if (ell == 0) fail(ErrorCode::UsageError, "index must be positive");
    if (f.prec() == 0) fail(ErrorCode::InsufficientPrecision, "empty series");
    uint32_t out_prec = (f.prec() - 1) / ell + 1;
    const Ctx& ctx = f.ctx();
    uint32_t r = ctx->r();
    QExpansion out(ctx, out_prec);
    for (uint32_t n = 0; n < out_prec; ++n)
        std::memcpy(&out.data()[size_t(n) * r], &f.data()[size_t(n) * ell * r], r);
    return out;
}

// ---------- RowSpace ----------

RowSpace::RowSpace(Ctx ctx, uint32_t prec) : ctx_(std::move(ctx)), prec_(prec) {}

namespace {

// dst += c * src elementwise over F_{p^r} on packed rows.
void row_axpy_fq(std::vector<uint8_t>& dst, const std::vector<uint8_t>& src, const Fq& c, const Ctx& ctx) {
    uint32_t r = ctx->r();
    uint32_t p = uint32_t(ctx->p());
    if (c.is_zero()) return;
    if (r == 1) {
        axpy_fp(dst.data(), src.data(), c.coeffs()[0], dst.size(), p);
        return;
    }
    // Matrix of multiplication by c in the power basis.
    std::vector<std::vector<uint8_t>> M(r, std::vector<uint8_t>(r));
    Fq xi = ctx->one();
    for (uint32_t j = 0; j < r; ++j) {
        Fq col = c * xi;
        for (uint32_t i = 0; i < r; ++i) M[i][j] = col.coeffs()[i];
        xi = xi * ctx->gen();
    }
    size_t n = dst.size() / r;
    for (size_t k = 0; k < n; ++k) {
        const uint8_t* s = &src[k * r];
        uint8_t* d = &dst[k * r];
        for (uint32_t i = 0; i < r; ++i) {
            uint32_t v = d[i];
            for (uint32_t j = 0; j < r; ++j) v += uint32_t(M[i][j]) * s[j];
            d[i] = uint8_t(v % p);
        }
    }
}

// Index of first nonzero element (coefficient), or prec if none.
uint32_t first_nonzero_elem(const std::vector<uint8_t>& v, uint32_t r) {
    size_t i = 0;
    while (i < v.size() && v[i] == 0) ++i;
    if (i == v.size()) return uint32_t(v.size() / r);
    return uint32_t(i / r);
}

}  // namespace

void RowSpace::reduce_in_place(std::vector<uint8_t>& v) const {
    uint32_t r = ctx_->r();
    for (size_t k = 0; k < rows_.size(); ++k) {
        uint32_t piv = pivots_[k];
        Fq e = ctx_->decode(&v[size_t(piv) * r]);
        if (!e.is_zero()) row_axpy_fq(v, rows_[k], -e, ctx_);
    }
}

bool RowSpace::insert(const QExpansion& f) {
    if (!f.ctx()->same_field(*ctx_)) fail(ErrorCode::ContextMismatch, "row over a different field");
    if (f.prec() != prec_) fail(ErrorCode::InsufficientPrecision, "row precision mismatch");
    std::vector<uint8_t> v = f.data();
    reduce_in_place(v);
    uint32_t r = ctx_->r();
    uint32_t piv = first_nonzero_elem(v, r);
    if (piv >= prec_) return false;
    Fq lead = ctx_->decode(&v[size_t(piv) * r]);
    if (!(lead == ctx_->one())) {
        Fq inv = lead.inv();
        if (r == 1)
            scale_fp(v.data(), inv.coeffs()[0], v.size(), uint32_t(ctx_->p()));
        else {
            std::vector<uint8_t> scaled(v.size(), 0);
            row_axpy_fq(scaled, v, inv, ctx_);
            v = std::move(scaled);
        }
    }
    // Eliminate the new pivot from existing rows.
    for (size_t k = 0; k < rows_.size(); ++k) {
        Fq e = ctx_->decode(&rows_[k][size_t(piv) * r]);
        if (!e.is_zero()) row_axpy_fq(rows_[k], v, -e, ctx_);
    }
    // Insert keeping pivot order.
    size_t pos = std::upper_bound(pivots_.begin(), pivots_.end(), piv) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, piv);
    rows_.insert(rows_.begin() + pos, std::move(v));
    return true;
}

std::vector<Fq> RowSpace::coordinates(const QExpansion& f) const {
    if (!f.ctx()->same_field(*ctx_)) fail(ErrorCode::ContextMismatch, "vector over a different field");
    if (f.prec() != prec_) fail(ErrorCode::InsufficientPrecision, "vector precision mismatch");
    std::vector<uint8_t> v = f.data();
    uint32_t r = ctx_->r();
    std::vector<Fq> coords(rows_.size(), ctx_->zero());
    for (size_t k = 0; k < rows_.size(); ++k) {
        Fq e = ctx_->decode(&v[size_t(pivots_[k]) * r]);
        coords[k] = e;
        if (!e.is_zero()) row_axpy_fq(v, rows_[k], -e, ctx_);
    }
    if (first_nonzero_elem(v, r) < prec_)
        fail(ErrorCode::NotInSpan, "vector is outside the span");
    return coords;
}

bool RowSpace::contains(const QExpansion& f) const {
    if (!f.ctx()->same_field(*ctx_)) fail(ErrorCode::ContextMismatch, "vector over a different field");
    if (f.prec() != prec_) fail(ErrorCode::InsufficientPrecision, "vector precision mismatch");
    std::vector<uint8_t> v = f.data();
    reduce_in_place(v);
    return first_nonzero_elem(v, ctx_->r()) >= prec_;
}

QExpansion RowSpace::combine(const std::vector<Fq>& coords) const {
    if (coords.size() != rows_.size()) fail(ErrorCode::UsageError, "coordinate count mismatch");
    QExpansion out(ctx_, prec_);
    for (size_t k = 0; k < rows_.size(); ++k) row_axpy_fq(out.data(), rows_[k], coords[k], ctx_);
    return out;
}

QExpansion RowSpace::row_series(uint32_t i) const {
    QExpansion out(ctx_, prec_);
    out.data() = rows_[i];
    return out;
}

}  // namespace thd
