#pragma once
// Exact rational arithmetic helpers on top of GMP.

#include <gmp.h>

#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

#include "common.hpp"

namespace thd {

// Minimal RAII rational; value semantics, canonical form maintained by GMP.
class Rat {
public:
    Rat() { mpq_init(v_); }
    Rat(int64_t n) {
        mpq_init(v_);
        mpq_set_si(v_, n, 1);
    }
    Rat(int64_t n, int64_t d) {
        mpq_init(v_);
        if (d == 0) fail(ErrorCode::DivisionByZero, "zero denominator");
        mpq_set_si(v_, n, d < 0 ? -d : d);
        if (d < 0) mpq_neg(v_, v_);
        mpq_canonicalize(v_);
    }
    Rat(const Rat& o) {
        mpq_init(v_);
        mpq_set(v_, o.v_);
    }
    Rat(Rat&& o) noexcept {
        mpq_init(v_);
        mpq_swap(v_, o.v_);
    }
    Rat& operator=(const Rat& o) {
        if (this != &o) mpq_set(v_, o.v_);
        return *this;
    }
    Rat& operator=(Rat&& o) noexcept {
        if (this != &o) mpq_swap(v_, o.v_);
        return *this;
    }
    ~Rat() { mpq_clear(v_); }

    Rat operator+(const Rat& o) const {
        Rat r;
        mpq_add(r.v_, v_, o.v_);
        return r;
    }
    Rat operator-(const Rat& o) const {
        Rat r;
        mpq_sub(r.v_, v_, o.v_);
        return r;
    }
    Rat operator*(const Rat& o) const {
        Rat r;
        mpq_mul(r.v_, v_, o.v_);
        return r;
    }
    Rat operator/(const Rat& o) const {
        if (o.is_zero()) fail(ErrorCode::DivisionByZero, "rational division by zero");
        Rat r;
        mpq_div(r.v_, v_, o.v_);
        return r;
    }
    Rat operator-() const {
        Rat r;
        mpq_neg(r.v_, v_);
        return r;
    }
    bool operator==(const Rat& o) const { return mpq_equal(v_, o.v_) != 0; }
    bool operator!=(const Rat& o) const { return !(*this == o); }
    bool is_zero() const { return mpq_sgn(v_) == 0; }

    // p-adic valuation; 0 must not be queried.
    int64_t valuation(uint64_t p) const;
    // Image in F_p (r = 1 context value); denominator must be prime to p.
    uint64_t mod_p(uint64_t p) const;
    // Exact multiplication by p^e (e may be negative).
    Rat times_ppow(uint64_t p, int64_t e) const;

    std::string str() const {
        char* s = mpq_get_str(nullptr, 10, v_);
        std::string out(s);
        void (*freefunc)(void*, size_t);
        mp_get_memory_functions(nullptr, nullptr, &freefunc);
        freefunc(s, std::strlen(s) + 1);
        return out;
    }

    const mpq_t& raw() const { return v_; }
    mpq_t& raw() { return v_; }

private:
    mpq_t v_;
};

// Exact binomial coefficient as Rat (integer-valued).
Rat binomial_rat(uint64_t n, uint64_t k);

// Bernoulli number B_k (B_1 = -1/2 convention), cached.
const Rat& bernoulli_number(uint32_t k);

}  // namespace thd
