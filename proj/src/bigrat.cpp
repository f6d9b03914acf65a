#include "bigrat.hpp"

#include <cstring>
#include <mutex>

namespace thd {

int64_t Rat::valuation(uint64_t p) const {
    if (is_zero()) fail(ErrorCode::UsageError, "valuation of zero");
    mpz_t num, den;
    mpz_init(num);
    mpz_init(den);
    mpq_get_num(num, v_);
    mpq_get_den(den, v_);
    int64_t v = 0;
    while (mpz_divisible_ui_p(num, p)) {
        mpz_divexact_ui(num, num, p);
        ++v;
    }
    while (mpz_divisible_ui_p(den, p)) {
        mpz_divexact_ui(den, den, p);
        --v;
    }
    mpz_clear(num);
    mpz_clear(den);
    return v;
}

uint64_t Rat::mod_p(uint64_t p) const {
    mpz_t num, den;
    mpz_init(num);
    mpz_init(den);
    mpq_get_num(num, v_);
    mpq_get_den(den, v_);
    uint64_t d = mpz_fdiv_ui(den, p);
    if (d == 0) {
        mpz_clear(num);
        mpz_clear(den);
        fail(ErrorCode::PDividesDenominator, "denominator divisible by " + std::to_string(p));
    }
    uint64_t n = mpz_fdiv_ui(num, p);
    mpz_clear(num);
    mpz_clear(den);
    return n * invmod_u64(d, p) % p;
}

Rat Rat::times_ppow(uint64_t p, int64_t e) const {
    Rat pw(1);
    mpz_t z;
    mpz_init(z);
    mpz_ui_pow_ui(z, p, uint64_t(e < 0 ? -e : e));
    Rat factor;
    mpq_set_z(factor.raw(), z);
    mpz_clear(z);
    return e >= 0 ? *this * factor : *this / factor;
}

Rat binomial_rat(uint64_t n, uint64_t k) {
    if (k > n) return Rat(0);
    mpz_t z;
    mpz_init(z);
    mpz_bin_uiui(z, n, k);
    Rat r;
    mpq_set_z(r.raw(), z);
    mpz_clear(z);
    return r;
}

const Rat& bernoulli_number(uint32_t k) {
    static std::vector<Rat> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    if (cache.empty()) {
        cache.emplace_back(1);        // B_0
        cache.emplace_back(-1, 2);    // B_1
    }
    while (cache.size() <= k) {
        uint32_t m = uint32_t(cache.size());
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        Rat acc(0);
        for (uint32_t j = 0; j < m; ++j) acc = acc + binomial_rat(m + 1, j) * cache[j];
        cache.push_back(-acc / Rat(int64_t(m) + 1));
    }
    return cache[k];
}

}  // namespace thd
