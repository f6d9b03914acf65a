#include "matfq.hpp"

#include <algorithm>

#include "common.hpp"

namespace thd {

MatFq::MatFq(Ctx ctx, size_t rows, size_t cols)
    : ctx_(std::move(ctx)), rows_(rows), cols_(cols), data_(rows * cols * ctx_->r(), 0) {}

MatFq MatFq::identity(Ctx ctx, size_t n) {
    MatFq m(std::move(ctx), n, n);
    Fq one = m.ctx_->one();
    for (size_t i = 0; i < n; ++i) m.set(i, i, one);
    return m;
}

Fq MatFq::at(size_t i, size_t j) const {
    return ctx_->decode(&data_[(i * cols_ + j) * ctx_->r()]);
}

void MatFq::set(size_t i, size_t j, const Fq& v) {
    if (!v.ctx() || !v.ctx()->same_field(*ctx_))
        fail(ErrorCode::ContextMismatch, "matrix entry from another field");
    ctx_->encode(v, &data_[(i * cols_ + j) * ctx_->r()]);
}

void MatFq::set_int(size_t i, size_t j, int64_t v) { set(i, j, ctx_->from_int(v)); }

void MatFq::check_same(const MatFq& o) const {
    if (!ctx_->same_field(*o.ctx_)) fail(ErrorCode::ContextMismatch, "matrices over different fields");
}

bool MatFq::operator==(const MatFq& o) const {
    return ctx_->same_field(*o.ctx_) && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

bool MatFq::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](uint8_t b) { return b == 0; });
}

MatFq MatFq::operator+(const MatFq& o) const {
    check_same(o);
    if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorCode::UsageError, "matrix shape mismatch");
    MatFq out(ctx_, rows_, cols_);
    uint32_t p = static_cast<uint32_t>(ctx_->p());
    // Entries are packed coefficient lanes, so addition is lane-wise mod p.
    for (size_t t = 0; t < data_.size(); ++t)
        out.data_[t] = static_cast<uint8_t>((data_[t] + o.data_[t]) % p);
    return out;
}

MatFq MatFq::operator-(const MatFq& o) const {
    check_same(o);
    if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorCode::UsageError, "matrix shape mismatch");
    MatFq out(ctx_, rows_, cols_);
    uint32_t p = static_cast<uint32_t>(ctx_->p());
    for (size_t t = 0; t < data_.size(); ++t)
        out.data_[t] = static_cast<uint8_t>((data_[t] + p - o.data_[t]) % p);
    return out;
}

MatFq MatFq::operator*(const MatFq& o) const {
    check_same(o);
    if (cols_ != o.rows_) fail(ErrorCode::UsageError, "matrix shape mismatch");
    MatFq out(ctx_, rows_, o.cols_);
    if (ctx_->r() == 1) {
        uint64_t p = ctx_->p();
        size_t nc = o.cols_;
        std::vector<uint64_t> acc(nc);
        for (size_t i = 0; i < rows_; ++i) {
            std::fill(acc.begin(), acc.end(), 0);
            const uint8_t* arow = &data_[i * cols_];
            for (size_t k = 0; k < cols_; ++k) {
                uint64_t c = arow[k];
                if (!c) continue;
                const uint8_t* brow = &o.data_[k * nc];
                for (size_t j = 0; j < nc; ++j) acc[j] += c * brow[j];
            }
            uint8_t* orow = &out.data_[i * nc];
            for (size_t j = 0; j < nc; ++j) orow[j] = static_cast<uint8_t>(acc[j] % p);
        }
        return out;
    }
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < o.cols_; ++j) {
            Fq s = ctx_->zero();
            for (size_t k = 0; k < cols_; ++k) s = s + at(i, k) * o.at(k, j);
            out.set(i, j, s);
        }
    return out;
}

MatFq MatFq::scaled(const Fq& c) const {
    MatFq out(ctx_, rows_, cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) out.set(i, j, at(i, j) * c);
    return out;
}

MatFq MatFq::transpose() const {
    MatFq out(ctx_, cols_, rows_);
    uint32_t r = ctx_->r();
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j)
            std::copy_n(&data_[(i * cols_ + j) * r], r, &out.data_[(j * rows_ + i) * r]);
    return out;
}

MatFq MatFq::pow(uint64_t e) const {
    if (rows_ != cols_) fail(ErrorCode::UsageError, "power of a non-square matrix");
    MatFq result = identity(ctx_, rows_);
    MatFq base = *this;
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

MatFq MatFq::hcat(const MatFq& a, const MatFq& b) {
    a.check_same(b);
    if (a.rows_ != b.rows_) fail(ErrorCode::UsageError, "matrix shape mismatch");
    MatFq out(a.ctx_, a.rows_, a.cols_ + b.cols_);
    uint32_t r = a.ctx_->r();
    for (size_t i = 0; i < a.rows_; ++i) {
        std::copy_n(&a.data_[i * a.cols_ * r], a.cols_ * r, &out.data_[i * out.cols_ * r]);
        std::copy_n(&b.data_[i * b.cols_ * r], b.cols_ * r,
                    &out.data_[(i * out.cols_ + a.cols_) * r]);
    }
    return out;
}

MatFq MatFq::columns(const std::vector<size_t>& js) const {
    MatFq out(ctx_, rows_, js.size());
    uint32_t r = ctx_->r();
    for (size_t t = 0; t < js.size(); ++t) {
        if (js[t] >= cols_) fail(ErrorCode::UsageError, "column index out of range");
        for (size_t i = 0; i < rows_; ++i)
            std::copy_n(&data_[(i * cols_ + js[t]) * r], r, &out.data_[(i * js.size() + t) * r]);
    }
    return out;
}

std::vector<size_t> MatFq::rref_in_place() {
    std::vector<size_t> pivots;
    if (ctx_->r() == 1) {
        uint32_t p = static_cast<uint32_t>(ctx_->p());
        std::vector<uint8_t> inv(p, 0);
        for (uint32_t a = 1; a < p; ++a) inv[a] = static_cast<uint8_t>(invmod_u64(a, p));
        uint8_t* d = data_.data();
        size_t nc = cols_;
        size_t row = 0;
        for (size_t col = 0; col < nc && row < rows_; ++col) {
            size_t pr = row;
            while (pr < rows_ && d[pr * nc + col] == 0) ++pr;
            if (pr == rows_) continue;
            if (pr != row)
                std::swap_ranges(d + pr * nc + col, d + (pr + 1) * nc, d + row * nc + col);
            uint32_t f = inv[d[row * nc + col]];
            uint8_t* src = d + row * nc;
            if (f != 1)
                for (size_t j = col; j < nc; ++j)
                    src[j] = static_cast<uint8_t>(src[j] * f % p);
            for (size_t i = 0; i < rows_; ++i) {
                if (i == row) continue;
                uint32_t c = d[i * nc + col];
                if (!c) continue;
                uint32_t m = p - c;
                uint8_t* dst = d + i * nc;
                for (size_t j = col; j < nc; ++j)
                    dst[j] = static_cast<uint8_t>((dst[j] + m * src[j]) % p);
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }
    size_t row = 0;
    for (size_t col = 0; col < cols_ && row < rows_; ++col) {
        size_t pr = row;
        while (pr < rows_ && at(pr, col).is_zero()) ++pr;
        if (pr == rows_) continue;
        if (pr != row) {
            uint32_t r = ctx_->r();
            std::swap_ranges(data_.begin() + pr * cols_ * r, data_.begin() + (pr + 1) * cols_ * r,
                             data_.begin() + row * cols_ * r);
        }
        Fq f = at(row, col).inv();
        for (size_t j = col; j < cols_; ++j) set(row, j, at(row, j) * f);
        for (size_t i = 0; i < rows_; ++i) {
            if (i == row) continue;
            Fq c = at(i, col);
            if (c.is_zero()) continue;
            for (size_t j = col; j < cols_; ++j) set(i, j, at(i, j) - c * at(row, j));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

size_t MatFq::rank() const {
    MatFq tmp = *this;
    return tmp.rref_in_place().size();
}

MatFq MatFq::nullspace() const {
    MatFq red = *this;
    std::vector<size_t> piv = red.rref_in_place();
    std::vector<char> is_piv(cols_, 0);
    for (size_t c : piv) is_piv[c] = 1;
    MatFq ker(ctx_, cols_, cols_ - piv.size());
    Fq one = ctx_->one();
    size_t idx = 0;
    for (size_t j = 0; j < cols_; ++j) {
        if (is_piv[j]) continue;
        ker.set(j, idx, one);
        for (size_t i = 0; i < piv.size(); ++i) {
            Fq v = red.at(i, j);
            if (!v.is_zero()) ker.set(piv[i], idx, -v);
        }
        ++idx;
    }
    return ker;
}

MatFq MatFq::generalized_nullspace(size_t* power_out) const {
    if (rows_ != cols_) fail(ErrorCode::UsageError, "generalized kernel of a non-square matrix");
    MatFq powm = *this;
    size_t power = 1;
    MatFq ker = powm.nullspace();
    while (power < rows_) {
        MatFq next = powm * powm;
        MatFq k2 = next.nullspace();
        if (k2.cols() == ker.cols()) break;  // ker M^s = ker M^2s forces stability
        powm = std::move(next);
        power *= 2;
        ker = std::move(k2);
    }
    if (power_out) *power_out = power;
    return ker;
}

std::vector<Fq> MatFq::charpoly() const {
    if (rows_ != cols_) fail(ErrorCode::UsageError, "characteristic polynomial of a non-square matrix");
    size_t n = rows_;
    Fq one = ctx_->one();
    if (n == 0) return {one};
    std::vector<Fq> h(n * n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) h[i * n + j] = at(i, j);

    // Reduce to upper Hessenberg form by similarity transformations.
    for (size_t j = 0; j + 2 < n; ++j) {
        size_t pr = j + 1;
        while (pr < n && h[pr * n + j].is_zero()) ++pr;
        if (pr == n) continue;
        if (pr != j + 1) {
            for (size_t c = 0; c < n; ++c) std::swap(h[pr * n + c], h[(j + 1) * n + c]);
            for (size_t r2 = 0; r2 < n; ++r2) std::swap(h[r2 * n + pr], h[r2 * n + (j + 1)]);
        }
        Fq piv_inv = h[(j + 1) * n + j].inv();
        for (size_t i = j + 2; i < n; ++i) {
            Fq f = h[i * n + j] * piv_inv;
            if (f.is_zero()) continue;
            for (size_t c = j; c < n; ++c) h[i * n + c] = h[i * n + c] - f * h[(j + 1) * n + c];
            for (size_t r2 = 0; r2 < n; ++r2)
                h[r2 * n + (j + 1)] = h[r2 * n + (j + 1)] + f * h[r2 * n + i];
        }
    }

    // det(xI - H_m) satisfies a recurrence along leading principal blocks.
    std::vector<std::vector<Fq>> p(n + 1);
    p[0] = {one};
    for (size_t m = 1; m <= n; ++m) {
        const std::vector<Fq>& prev = p[m - 1];
        std::vector<Fq> cur(m + 1, ctx_->zero());
        Fq diag = h[(m - 1) * n + (m - 1)];
        for (size_t t = 0; t < prev.size(); ++t) {
            cur[t + 1] = cur[t + 1] + prev[t];
            cur[t] = cur[t] - diag * prev[t];
        }
        Fq prod = one;
        for (size_t i = m - 1; i >= 1; --i) {
            prod = prod * h[i * n + (i - 1)];
            if (prod.is_zero()) break;
            Fq coef = h[(i - 1) * n + (m - 1)] * prod;
            if (!coef.is_zero()) {
                const std::vector<Fq>& pi = p[i - 1];
                for (size_t t = 0; t < pi.size(); ++t) cur[t] = cur[t] - coef * pi[t];
            }
        }
        p[m] = std::move(cur);
    }
    return p[n];
}

MatFq MatFq::solve(const MatFq& b) const {
    check_same(b);
    if (rows_ != b.rows_) fail(ErrorCode::UsageError, "matrix shape mismatch");
    MatFq aug = hcat(*this, b);
    std::vector<size_t> piv = aug.rref_in_place();
    for (size_t c : piv)
        if (c >= cols_) fail(ErrorCode::NotInSpan, "inconsistent linear system");
    if (piv.size() < cols_) fail(ErrorCode::AmbiguousSolve, "underdetermined linear system");
    MatFq x(ctx_, cols_, b.cols_);
    for (size_t i = 0; i < piv.size(); ++i)
        for (size_t j = 0; j < b.cols_; ++j) x.set(piv[i], j, aug.at(i, cols_ + j));
    return x;
}

}  // namespace thd
