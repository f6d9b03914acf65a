#pragma once
// Shared error taxonomy and small utilities used across the library.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace thd {

enum class ErrorCode {
    NotPrime,
    UnsupportedCharacteristic,
    DegreeTooLarge,
    DivisionByZero,
    ContextMismatch,
    RationalContext,
    InsufficientPrecision,
    ParityMismatch,
    PDividesDenominator,
    SpanDeficient,
    WeightOneUnsupported,
    NotInSpan,
    AmbiguousSolve,
    FieldTooSmall,
    NotAnEigenvalue,
    NonOrdinary,
    NonCommuting,
    NotSubalgebra,
    NotFundamental,
    UnsupportedClassNumber,
    UnknownDiscriminant,
    DiscriminantDivisible,
    BadCharacterLabel,
    CandidateInconclusive,
    UsageError,
    CacheError,
    Internal,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + msg), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

// u64 modular helpers (moduli < 2^32 so products fit in u64).
inline uint64_t mulmod_u32(uint64_t a, uint64_t b, uint64_t m) { return (a * b) % m; }

inline uint64_t powmod_u64(uint64_t base, uint64_t exp, uint64_t mod) {
    // Requires mod < 2^32.
    uint64_t acc = 1 % mod;
    base %= mod;
    while (exp) {
        if (exp & 1) acc = acc * base % mod;
        base = base * base % mod;
        exp >>= 1;
    }
    return acc;
}

inline int64_t mod_norm(int64_t a, int64_t m) {
    int64_t r = a % m;
    return r < 0 ? r + m : r;
}

uint64_t gcd_u64(uint64_t a, uint64_t b);
// Extended gcd: returns g, sets x,y with a*x + b*y = g.
int64_t egcd_i64(int64_t a, int64_t b, int64_t& x, int64_t& y);
// Inverse of a mod m (m < 2^31), throws DivisionByZero if gcd != 1.
uint64_t invmod_u64(uint64_t a, uint64_t m);

bool is_prime_u64(uint64_t n);                 // deterministic Miller-Rabin for n < 2^63
std::vector<uint64_t> factor_u64(uint64_t n);  // sorted prime factors with multiplicity
std::vector<uint64_t> distinct_prime_factors(uint64_t n);
std::vector<uint64_t> divisors_u64(uint64_t n);  // sorted
uint64_t euler_phi(uint64_t n);

// Multiplicative order of a modulo m (gcd(a,m)=1 required).
uint64_t mult_order(uint64_t a, uint64_t m);

}  // namespace thd
