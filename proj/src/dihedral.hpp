#pragma once
// Weight-one dihedral forms from imaginary quadratic class groups: reduced
// binary quadratic forms, their theta series by lattice enumeration, and the
// class-character combinations that give the newforms of level |D| with
// quadratic nebentypus.  Only the two working discriminants carry class
// structure tables; everything about them is validated at runtime.

#include <cstdint>
#include <vector>

#include "ff.hpp"
#include "qseries.hpp"

namespace thd {

struct QuadForm {
    int64_t a = 0, b = 0, c = 0;
    bool operator==(const QuadForm& o) const { return a == o.a && b == o.b && c == o.c; }
};

// All reduced positive-definite forms of fundamental discriminant D < 0
// (|b| <= a <= c, with b >= 0 when |b| = a or a = c).  NotFundamental for
// non-fundamental D.
std::vector<QuadForm> reduced_forms(int64_t D);

// r_Q(n) for n < prec: the number of (x, y) in Z^2 with Q(x, y) = n.
std::vector<uint32_t> theta_counts(const QuadForm& Q, uint32_t prec);

// Exact integer coefficients of the weight-one newform of level 23:
// half the difference of the two class theta series.
std::vector<int64_t> dihedral_coeffs_23(uint32_t prec);

// Reduction over F of the weight-one dihedral newform attached to D.
// D = -23: class character of order 3, integer coefficients, any p > 2.
// D = -47: class character of order 5; variant in {1, 2} picks which
//   theta pair is weighted by zeta + zeta^-1 versus zeta^2 + zeta^-2
//   (the two choices give Galois-conjugate newforms).  Requires a fifth
//   root of unity in F unless p = 5, where zeta degenerates to 1.
// UnknownDiscriminant for other D.
QExpansion weight_one_dihedral(int64_t D, const Ctx& F, uint32_t prec, uint32_t variant = 1);

// Monic integer polynomial (ascending coefficients) of degree h(D) whose
// complete splitting mod a prime ell with (D|ell) = 1 detects principality
// of ell.  Its discriminant is recomputed and pinned at every call.
std::vector<int64_t> class_poly(int64_t D);

}  // namespace thd
