#pragma once
// Exact arithmetic in Q(zeta_m), modeled as Q[x]/(Phi_m), together with the
// reduction to a finite field sending zeta_m to a chosen root of unity.

#include <memory>
#include <vector>

#include "bigrat.hpp"
#include "ff.hpp"

namespace thd {

class CycCtx;
using CycPtr = std::shared_ptr<const CycCtx>;

class CycRat {
public:
    CycRat() = default;
    CycRat(CycPtr ctx, std::vector<Rat> coeffs);

    const CycPtr& ctx() const { return ctx_; }
    const std::vector<Rat>& coeffs() const { return c_; }
    bool is_zero() const;

    CycRat operator+(const CycRat& o) const;
    CycRat operator-(const CycRat& o) const;
    CycRat operator*(const CycRat& o) const;
    CycRat operator*(const Rat& s) const;
    bool operator==(const CycRat& o) const;

    // Image under zeta_m -> ctx->root_of_unity(m); requires gcd(m, p) = 1.
    Fq reduce(const Ctx& field) const;

private:
    CycPtr ctx_;
    std::vector<Rat> c_;  // coefficients of 1, x, ..., x^{phi(m)-1}
};

class CycCtx : public std::enable_shared_from_this<CycCtx> {
public:
    static CycPtr make(uint64_t m);

    uint64_t m() const { return m_; }
    uint32_t degree() const { return uint32_t(phi_.size() - 1); }
    // Cyclotomic polynomial coefficients as exact rationals (integral).
    const std::vector<Rat>& modulus() const { return phi_; }

    CycRat zero() const;
    CycRat one() const;
    CycRat from_rat(const Rat& r) const;
    CycRat zeta_pow(uint64_t j) const;  // x^j reduced

private:
    CycCtx() = default;
    uint64_t m_ = 0;
    std::vector<Rat> phi_;
};

}  // namespace thd
