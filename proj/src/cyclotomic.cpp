#include "cyclotomic.hpp"

#include <algorithm>

namespace thd {

namespace {

void trim(std::vector<Rat>& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

std::vector<Rat> poly_mul(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<Rat> c(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) c[i + j] = c[i + j] + a[i] * b[j];
    }
    trim(c);
    return c;
}

// a mod b, b monic.
std::vector<Rat> poly_rem(std::vector<Rat> a, const std::vector<Rat>& b) {
    trim(a);
    while (a.size() >= b.size()) {
        Rat lead = a.back();
        size_t shift = a.size() - b.size();
        if (!lead.is_zero())
            for (size_t i = 0; i < b.size(); ++i) a[shift + i] = a[shift + i] - lead * b[i];
        a.pop_back();
        trim(a);
        if (a.size() < b.size()) break;
    }
    return a;
}

// Exact quotient a / b (remainder must vanish), b monic.
std::vector<Rat> poly_div_exact(std::vector<Rat> a, const std::vector<Rat>& b) {
    trim(a);
    if (a.empty()) return {};
    if (a.size() < b.size()) fail(ErrorCode::Internal, "inexact cyclotomic division");
    std::vector<Rat> q(a.size() - b.size() + 1, Rat(0));
    for (size_t k = a.size(); k-- >= b.size();) {
        Rat lead = a[k];
        if (!lead.is_zero()) {
            size_t pos = k - (b.size() - 1);
            q[pos] = lead;
            for (size_t i = 0; i < b.size(); ++i) a[pos + i] = a[pos + i] - lead * b[i];
        }
        if (k == b.size() - 1) break;
    }
    trim(a);
    if (!a.empty()) fail(ErrorCode::Internal, "inexact cyclotomic division");
    return q;
}

std::vector<Rat> cyclotomic_poly(uint64_t m) {
    // x^m - 1 divided by Phi_d for all proper divisors d.
    std::vector<Rat> poly(m + 1, Rat(0));
    poly[0] = Rat(-1);
    poly[m] = Rat(1);
    for (uint64_t d : divisors_u64(m)) {
        if (d == m) continue;
        poly = poly_div_exact(std::move(poly), cyclotomic_poly(d));
    }
    return poly;
}

}  // namespace

CycPtr CycCtx::make(uint64_t m) {
    if (m == 0) fail(ErrorCode::UsageError, "cyclotomic order must be positive");
    auto ctx = std::shared_ptr<CycCtx>(new CycCtx());
    ctx->m_ = m;
    ctx->phi_ = cyclotomic_poly(m);
    return ctx;
}

CycRat CycCtx::zero() const { return CycRat(shared_from_this(), std::vector<Rat>(degree(), Rat(0))); }

CycRat CycCtx::one() const { return from_rat(Rat(1)); }

CycRat CycCtx::from_rat(const Rat& r) const {
    std::vector<Rat> c(degree(), Rat(0));  // degree >= 1 for every m
    c[0] = r;
    return CycRat(shared_from_this(), std::move(c));
}

CycRat CycCtx::zeta_pow(uint64_t j) const {
    j %= m_;
    std::vector<Rat> x(j + 1, Rat(0));
    x[j] = Rat(1);
    auto red = poly_rem(std::move(x), phi_);
    red.resize(degree(), Rat(0));
    return CycRat(shared_from_this(), std::move(red));
}

CycRat::CycRat(CycPtr ctx, std::vector<Rat> coeffs) : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
    if (c_.size() != ctx_->degree()) fail(ErrorCode::Internal, "cyclotomic coefficient count");
}

bool CycRat::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rat& r) { return r.is_zero(); });
}

CycRat CycRat::operator+(const CycRat& o) const {
    if (ctx_->m() != o.ctx_->m()) fail(ErrorCode::ContextMismatch, "different cyclotomic orders");
    std::vector<Rat> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] + o.c_[i];
    return CycRat(ctx_, std::move(c));
}

CycRat CycRat::operator-(const CycRat& o) const {
    if (ctx_->m() != o.ctx_->m()) fail(ErrorCode::ContextMismatch, "different cyclotomic orders");
    std::vector<Rat> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] - o.c_[i];
    return CycRat(ctx_, std::move(c));
}

CycRat CycRat::operator*(const CycRat& o) const {
    if (ctx_->m() != o.ctx_->m()) fail(ErrorCode::ContextMismatch, "different cyclotomic orders");
    std::vector<Rat> a(c_.begin(), c_.end()), b(o.c_.begin(), o.c_.end());
    auto prod = poly_mul(a, b);
    auto red = poly_rem(std::move(prod), ctx_->modulus());
    red.resize(ctx_->degree(), Rat(0));
    return CycRat(ctx_, std::move(red));
}

CycRat CycRat::operator*(const Rat& s) const {
    std::vector<Rat> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] * s;
    return CycRat(ctx_, std::move(c));
}

bool CycRat::operator==(const CycRat& o) const {
    if (ctx_->m() != o.ctx_->m()) fail(ErrorCode::ContextMismatch, "different cyclotomic orders");
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != o.c_[i]) return false;
    return true;
}

Fq CycRat::reduce(const Ctx& field) const {
    if (gcd_u64(ctx_->m(), field->p()) != 1)
        fail(ErrorCode::UsageError, "cyclotomic order shares a factor with the characteristic");
    Fq zeta = field->root_of_unity(ctx_->m());
    Fq acc = field->zero();
    Fq zp = field->one();
    for (size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i].is_zero()) acc = acc + zp * field->from_int(int64_t(c_[i].mod_p(field->p())));
        zp = zp * zeta;
    }
    return acc;
}

}  // namespace thd
