#pragma once
// Arithmetic in F_{p^r}, presented as F_p[x]/(m(x)) for a canonical modulus m:
// the first monic irreducible of degree r when candidates are ordered by the
// integer value c_0 + c_1 p + ... of their non-leading coefficients.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "common.hpp"

namespace thd {

class FieldCtx;
using Ctx = std::shared_ptr<const FieldCtx>;

class Fq {
public:
    Fq() = default;
    Fq(Ctx ctx, std::vector<uint8_t> coeffs);

    const Ctx& ctx() const { return ctx_; }
    const std::vector<uint8_t>& coeffs() const { return c_; }

    bool is_zero() const;
    bool operator==(const Fq& o) const;
    bool operator!=(const Fq& o) const { return !(*this == o); }

    Fq operator+(const Fq& o) const;
    Fq operator-(const Fq& o) const;
    Fq operator-() const;
    Fq operator*(const Fq& o) const;
    Fq inv() const;
    Fq operator/(const Fq& o) const;
    Fq pow(uint64_t e) const;
    Fq frobenius() const;  // x -> x^p

    // Sum c_i p^i; total order used for canonical choices.
    uint64_t canonical_uint() const;
    std::string to_string() const;

private:
    friend class FieldCtx;
    Ctx ctx_;
    std::vector<uint8_t> c_;  // length r, values in [0,p)
};

class FieldCtx : public std::enable_shared_from_this<FieldCtx> {
public:
    // Public constructor: odd p >= 5, p < 256, 1 <= r <= 8.
    static Ctx make(uint64_t p, uint32_t r);
    // Internal constructor for large residue fields: p >= 2 prime, p^r < 2^62.
    static Ctx make_internal(uint64_t p, uint32_t r);

    uint64_t p() const { return p_; }
    uint32_t r() const { return r_; }
    uint64_t q() const { return q_; }
    // Monic modulus, coefficient i of x^i, length r+1.
    const std::vector<uint32_t>& modulus() const { return mod_; }

    Fq zero() const;
    Fq one() const;
    Fq from_int(int64_t v) const;
    Fq gen() const;  // class of x
    Fq from_canonical_uint(uint64_t v) const;

    // Smallest element (canonical order) generating the multiplicative group.
    Fq primitive_element() const;
    // primitive_element()^((q-1)/n); FieldTooSmall unless n | q-1.
    Fq root_of_unity(uint64_t n) const;

    // Bytes <-> element (r bytes, coefficient of x^i at offset i).
    void encode(const Fq& a, uint8_t* out) const;
    Fq decode(const uint8_t* in) const;

    bool same_field(const FieldCtx& o) const;

private:
    FieldCtx() = default;
    static Ctx make_checked(uint64_t p, uint32_t r, bool internal);

    uint64_t p_ = 0;
    uint64_t q_ = 0;
    uint32_t r_ = 0;
    std::vector<uint32_t> mod_;
    mutable std::vector<uint8_t> primitive_;  // cached, empty until first use
    mutable std::vector<uint64_t> q1_primes_;
};

// All roots in the coefficient field of a polynomial given by coefficients
// (index = degree). Exhaustive scan; the field order must be at most 2^22.
std::vector<Fq> poly_roots(const Ctx& ctx, const std::vector<Fq>& poly);

// Polynomial helpers over F_p (index = degree, normalized, values in [0,p)).
using PolyFp = std::vector<uint32_t>;
PolyFp poly_mulmod_fp(const PolyFp& a, const PolyFp& b, const PolyFp& mod, uint64_t p);
PolyFp poly_powmod_fp(const PolyFp& base, uint64_t exp, const PolyFp& mod, uint64_t p);
PolyFp poly_gcd_fp(PolyFp a, PolyFp b, uint64_t p);
bool poly_irreducible_fp(const PolyFp& f, uint64_t p);

}  // namespace thd
