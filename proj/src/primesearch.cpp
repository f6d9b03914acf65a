#include "primesearch.hpp"

#include <algorithm>

#include "common.hpp"
#include "dihedral.hpp"

namespace thd {

namespace {

// Dense little-endian coefficient vectors over F_ell, ell < 2^32.
using Pol = std::vector<uint64_t>;

int degree(const Pol& f) {
    int d = int(f.size()) - 1;
    while (d >= 0 && f[size_t(d)] == 0) --d;
    return d;
}

// a * b reduced by the monic modulus f.
Pol mulmod_pol(const Pol& a, const Pol& b, const Pol& f, uint64_t ell) {
    const size_t n = f.size() - 1;
    Pol r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            if (b[j]) r[i + j] = (r[i + j] + a[i] * b[j]) % ell;
    }
    for (size_t i = r.size(); i-- > n;) {
        uint64_t c = r[i];
        if (!c) continue;
        r[i] = 0;
        for (size_t j = 0; j < n; ++j) r[i - n + j] = (r[i - n + j] + (ell - c % ell) * f[j]) % ell;
    }
    r.resize(n);
    return r;
}

Pol xpow_mod(uint64_t e, const Pol& f, uint64_t ell) {
    Pol base = mulmod_pol({0, 1}, {1}, f, ell);  // x reduced mod f
    Pol acc = mulmod_pol({1}, {1}, f, ell);
    while (e) {
        if (e & 1) acc = mulmod_pol(acc, base, f, ell);
        base = mulmod_pol(base, base, f, ell);
        e >>= 1;
    }
    return acc;
}

Pol gcd_pol(Pol a, Pol b, uint64_t ell) {
    while (true) {
        int db = degree(b);
        if (db < 0) return a;
        int da = degree(a);
        if (da < db) {
            std::swap(a, b);
            continue;
        }
        uint64_t inv = powmod_u64(b[size_t(db)], ell - 2, ell);
        uint64_t c = a[size_t(da)] * inv % ell;
        for (int j = 0; j <= db; ++j) {
            size_t k = size_t(da - db + j);
            a[k] = (a[k] + (ell - c) * b[size_t(j)]) % ell;
        }
    }
}

}  // namespace

int kronecker(int64_t a, uint64_t n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if (a % 2 == 0 && n % 2 == 0) return 0;
    int k = 1;
    uint64_t v = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++v;
    }
    if (v % 2 == 1) {
        int64_t am8 = ((a % 8) + 8) % 8;
        if (am8 == 3 || am8 == 5) k = -k;
    }
    // n odd from here; run binary reciprocity on 0 <= a < n.
    uint64_t ua = a >= 0 ? uint64_t(a) % n : (n - (uint64_t(-(a + 1)) + 1) % n) % n;
    while (ua != 0) {
        while (ua % 2 == 0) {
            ua /= 2;
            uint64_t nm8 = n % 8;
            if (nm8 == 3 || nm8 == 5) k = -k;
        }
        if (ua % 4 == 3 && n % 4 == 3) k = -k;
        std::swap(ua, n);
        ua %= n;
    }
    return n == 1 ? k : 0;
}

bool splits_completely(const std::vector<int64_t>& poly, uint64_t ell) {
    if (!is_prime_u64(ell)) fail(ErrorCode::NotPrime, "splitting modulus must be prime");
    if (ell >> 32) fail(ErrorCode::UsageError, "splitting modulus must fit in 32 bits");
    if (poly.size() < 2 || poly.back() != 1)
        fail(ErrorCode::UsageError, "splitting test needs a monic polynomial of degree >= 1");
    const size_t n = poly.size() - 1;
    Pol f(poly.size());
    for (size_t i = 0; i < poly.size(); ++i) f[i] = uint64_t(mod_norm(poly[i], int64_t(ell)));
    Pol df(n);
    for (size_t i = 1; i <= n; ++i) df[i - 1] = (i % ell) * f[i] % ell;
    if (degree(gcd_pol(f, df, ell)) != 0)
        fail(ErrorCode::DiscriminantDivisible,
             "polynomial has a repeated factor mod " + std::to_string(ell));
    // f | x^ell - x exactly when f is a product of distinct linear factors.
    Pol xe = xpow_mod(ell, f, ell);
    Pol x1 = mulmod_pol({0, 1}, {1}, f, ell);
    for (size_t i = 0; i < xe.size(); ++i) xe[i] = (xe[i] + ell - x1[i]) % ell;
    return degree(xe) < 0;
}

std::vector<uint64_t> sieve_auxiliary_primes(uint64_t p, int64_t D, uint64_t bound,
                                             SieveCounts* counts) {
    if (!is_prime_u64(p) || p < 3) fail(ErrorCode::UsageError, "sieve needs an odd prime p");
    if (bound >> 32) fail(ErrorCode::UsageError, "sieve bound must fit in 32 bits");
    std::vector<int64_t> poly = class_poly(D);  // validates D and the table
    const uint64_t absD = uint64_t(-D);
    SieveCounts local;
    SieveCounts& c = counts ? *counts : local;
    c = SieveCounts{};
    std::vector<uint64_t> out;
    for (uint64_t ell = 2; ell <= bound; ++ell) {
        if (!is_prime_u64(ell)) continue;
        if (ell == p || absD % ell == 0) continue;
        c.scanned++;
        if (ell % p != 1) continue;
        c.congruent++;
        if (kronecker(D, ell) != 1) continue;
        c.split++;
        if (!splits_completely(poly, ell)) continue;
        c.principal++;
        out.push_back(ell);
    }
    return out;
}

}  // namespace thd
