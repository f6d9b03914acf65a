#pragma once

#include <cstdint>
#include <vector>

#include "characters.hpp"

namespace thd {

// Geometry of the modular curve attached to the congruence subgroup lying
// between Gamma_1(N) and Gamma_0(N) that is cut out by a subgroup H of
// (Z/N)^* (matrices whose lower-right entry lies in H mod N).  The curve
// itself only sees +-H; the regular/irregular cusp split is sign-sensitive
// and is taken with respect to H.
struct CurveData {
    uint64_t N = 1;
    uint64_t index_psl = 1;  // index of the image subgroup in PSL_2(Z)
    uint64_t eps2 = 0;       // elliptic points of period 2
    uint64_t eps3 = 0;       // elliptic points of period 3
    uint64_t cusps = 0;
    uint64_t cusps_regular = 0;
    uint64_t cusps_irregular = 0;
    int64_t genus = 0;
    bool minus_one_in_h = true;
};

// Index of Gamma_0(N) in SL_2(Z): N * prod_{q | N} (1 + 1/q).
uint64_t gamma0_index(uint64_t N);

// in_h is a membership table over [0, N); entries at non-units are ignored.
// Must contain 1 (and is implicitly closed under multiplication; callers
// pass genuine subgroups, e.g. character kernels).
CurveData curve_data(uint64_t N, const std::vector<char>& in_h);

// dim_C M_k(Gamma_H).  k = 1 is not computable by these formulas
// (WeightOneUnsupported); k = 0 gives 1.
int64_t dim_mk_gamma_h(uint64_t N, const std::vector<char>& in_h, uint32_t k);

// dim_C M_k(N, chi), recovered from the Gamma_H dimensions attached to the
// kernels of the powers of chi (Galois conjugates share a dimension).
int64_t dim_mk_chi(const DirichletChar& chi, uint32_t k);

// Kernel membership table of chi, in the shape curve_data expects.
std::vector<char> kernel_table(const DirichletChar& chi);

}  // namespace thd
