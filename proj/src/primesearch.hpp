#pragma once
// Auxiliary-prime sieve.  The level-raising construction needs primes ell
// that satisfy two independent Chebotarev conditions at once: ell = 1 (mod p),
// and ell principal in the class group of the quadratic field of discriminant
// D.  Principality is detected by complete splitting of the class polynomial,
// so no class-field machinery is needed at sieve time.

#include <cstdint>
#include <vector>

namespace thd {

// Kronecker symbol (a|n).  Fully multiplicative extension of the Legendre
// symbol with the usual supplement at 2; (a|0) is 1 for a = +-1 and 0 else.
int kronecker(int64_t a, uint64_t n);

// True when poly (monic, ascending coefficients, degree >= 1) factors into
// distinct linear factors over F_ell.  Throws DiscriminantDivisible when
// poly mod ell has a repeated factor -- the criterion is meaningless at
// ramified primes and callers must exclude them.
bool splits_completely(const std::vector<int64_t>& poly, uint64_t ell);

struct SieveCounts {
    uint64_t scanned = 0;    // primes <= bound coprime to p and D
    uint64_t congruent = 0;  // of those: ell = 1 (mod p)
    uint64_t split = 0;      // of those: (D|ell) = 1
    uint64_t principal = 0;  // of those: class polynomial splits completely
};

// All primes ell <= bound, coprime to p*|D|, with ell = 1 (mod p) and ell
// principal for discriminant D, in increasing order.  The expected density
// among all primes is 1/((p-1)*2h); stage totals land in *counts when given.
std::vector<uint64_t> sieve_auxiliary_primes(uint64_t p, int64_t D, uint64_t bound,
                                             SieveCounts* counts = nullptr);

}  // namespace thd
