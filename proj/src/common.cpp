#include "common.hpp"

#include <algorithm>

namespace thd {

const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::NotPrime: return "NotPrime";
        case ErrorCode::UnsupportedCharacteristic: return "UnsupportedCharacteristic";
        case ErrorCode::DegreeTooLarge: return "DegreeTooLarge";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::ContextMismatch: return "ContextMismatch";
        case ErrorCode::RationalContext: return "RationalContext";
        case ErrorCode::InsufficientPrecision: return "InsufficientPrecision";
        case ErrorCode::ParityMismatch: return "ParityMismatch";
        case ErrorCode::PDividesDenominator: return "PDividesDenominator";
        case ErrorCode::SpanDeficient: return "SpanDeficient";
        case ErrorCode::WeightOneUnsupported: return "WeightOneUnsupported";
        case ErrorCode::NotInSpan: return "NotInSpan";
        case ErrorCode::AmbiguousSolve: return "AmbiguousSolve";
        case ErrorCode::FieldTooSmall: return "FieldTooSmall";
        case ErrorCode::NotAnEigenvalue: return "NotAnEigenvalue";
        case ErrorCode::NonOrdinary: return "NonOrdinary";
        case ErrorCode::NonCommuting: return "NonCommuting";
        case ErrorCode::NotSubalgebra: return "NotSubalgebra";
        case ErrorCode::NotFundamental: return "NotFundamental";
        case ErrorCode::UnsupportedClassNumber: return "UnsupportedClassNumber";
        case ErrorCode::UnknownDiscriminant: return "UnknownDiscriminant";
        case ErrorCode::DiscriminantDivisible: return "DiscriminantDivisible";
        case ErrorCode::BadCharacterLabel: return "BadCharacterLabel";
        case ErrorCode::CandidateInconclusive: return "CandidateInconclusive";
        case ErrorCode::UsageError: return "UsageError";
        case ErrorCode::CacheError: return "CacheError";
        case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

uint64_t gcd_u64(uint64_t a, uint64_t b) {
    while (b) {
        uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

int64_t egcd_i64(int64_t a, int64_t b, int64_t& x, int64_t& y) {
    if (b == 0) {
        x = (a >= 0) ? 1 : -1;
        y = 0;
        return a >= 0 ? a : -a;
    }
    int64_t x1, y1;
    int64_t g = egcd_i64(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

uint64_t invmod_u64(uint64_t a, uint64_t m) {
    int64_t x, y;
    int64_t g = egcd_i64(int64_t(a % m), int64_t(m), x, y);
    if (g != 1) fail(ErrorCode::DivisionByZero, "element not invertible mod " + std::to_string(m));
    return uint64_t(mod_norm(x, int64_t(m)));
}

namespace {
uint64_t mulmod_wide(uint64_t a, uint64_t b, uint64_t m) {
    return uint64_t((__uint128_t)a * b % m);
}
uint64_t powmod_wide(uint64_t base, uint64_t exp, uint64_t mod) {
    uint64_t acc = 1 % mod;
    base %= mod;
    while (exp) {
        if (exp & 1) acc = mulmod_wide(acc, base, mod);
        base = mulmod_wide(base, base, mod);
        exp >>= 1;
    }
    return acc;
}
}  // namespace

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    // Deterministic witness set for n < 3.3e24 (covers all u64).
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod_wide(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_wide(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace {
// Pollard-Brent cycle finding; returns a non-trivial factor of composite odd n.
uint64_t pollard_brent(uint64_t n) {
    if (n % 2 == 0) return 2;
    for (uint64_t c = 1;; ++c) {
        auto step = [&](uint64_t x) { return (mulmod_wide(x, x, n) + c) % n; };
        uint64_t x = 2, y = 2, d = 1;
        uint64_t lam = 1;
        while (d == 1) {
            x = y;
            for (uint64_t i = 0; i < lam; ++i) y = step(y);
            uint64_t k = 0;
            while (k < lam && d == 1) {
                uint64_t ys = y;
                uint64_t prod = 1;
                uint64_t batch = std::min<uint64_t>(128, lam - k);
                for (uint64_t i = 0; i < batch; ++i) {
                    y = step(y);
                    uint64_t diff = x > y ? x - y : y - x;
                    prod = mulmod_wide(prod, diff ? diff : 1, n);
                }
                d = gcd_u64(prod, n);
                if (d == n) {
                    // Backtrack one step at a time.
                    d = 1;
                    y = ys;
                    for (uint64_t i = 0; i < batch && d == 1; ++i) {
                        y = step(y);
                        uint64_t diff = x > y ? x - y : y - x;
                        d = gcd_u64(diff ? diff : n, n);
                    }
                    if (d == n) break;  // cycle degenerate for this c, retry
                }
                k += batch;
            }
            lam *= 2;
        }
        if (d != n && d != 1) return d;
    }
}

void factor_rec(uint64_t n, std::vector<uint64_t>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out.push_back(n);
        return;
    }
    uint64_t d = pollard_brent(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}
}  // namespace

std::vector<uint64_t> factor_u64(uint64_t n) {
    std::vector<uint64_t> out;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
        while (n % p == 0) {
            out.push_back(p);
            n /= p;
        }
    }
    factor_rec(n, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<uint64_t> distinct_prime_factors(uint64_t n) {
    auto f = factor_u64(n);
    f.erase(std::unique(f.begin(), f.end()), f.end());
    return f;
}

std::vector<uint64_t> divisors_u64(uint64_t n) {
    std::vector<uint64_t> out;
    for (uint64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            if (d != n / d) out.push_back(n / d);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

uint64_t euler_phi(uint64_t n) {
    uint64_t result = n;
    for (uint64_t p : distinct_prime_factors(n)) result -= result / p;
    return result;
}

uint64_t mult_order(uint64_t a, uint64_t m) {
    if (m == 1) return 1;
    a %= m;
    if (gcd_u64(a, m) != 1) fail(ErrorCode::DivisionByZero, "order of non-unit mod " + std::to_string(m));
    uint64_t ord = euler_phi(m);
    for (uint64_t p : distinct_prime_factors(ord)) {
        while (ord % p == 0 && powmod_wide(a, ord / p, m) == 1) ord /= p;
    }
    return ord;
}

}  // namespace thd
