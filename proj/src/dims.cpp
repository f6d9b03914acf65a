#include "dims.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "common.hpp"

namespace thd {

// Index of Gamma_0(N) in SL_2(Z): N * prod_{q | N} (1 + 1/q).
uint64_t gamma0_index(uint64_t N) {
    uint64_t mu = N;
    for (uint64_t q : distinct_prime_factors(N)) mu = mu / q * (q + 1);
    return mu;
}

namespace {

// Canonical key of a Gamma_1(N) cusp class folded by +-1.  A class is the
// orbit of a vector (a, c) of order N in (Z/N)^2 under (a, c) -> (a + j*c, c),
// which is classified by (c, a mod gcd(c, N)); the +-fold takes the
// lexicographic minimum with (-c, -a).  Encoded as c * N + a1.
uint64_t cusp_key(uint64_t N, uint64_t c, uint64_t a1) {
    uint64_t g = (c == 0) ? N : gcd_u64(c, N);
    a1 %= g;
    uint64_t c2 = (N - c) % N;
    uint64_t a2 = (g - a1) % g;
    uint64_t k1 = c * N + a1;
    uint64_t k2 = c2 * N + a2;
    return std::min(k1, k2);
}

struct CuspClass {
    uint64_t c;   // representative lower entry in [0, N)
    uint64_t a1;  // upper entry mod gcd(c, N)
};

// All Gamma_1(N) cusp classes (folded by +-1), keyed canonically.
std::map<uint64_t, CuspClass> gamma1_cusp_classes(uint64_t N) {
    std::map<uint64_t, CuspClass> classes;
    for (uint64_t c = 0; c < N; ++c) {
        uint64_t g = (c == 0) ? N : gcd_u64(c, N);
        for (uint64_t a1 = 0; a1 < g; ++a1) {
            if (gcd_u64(a1, g) != 1) continue;  // gcd(0, 1) = 1 keeps the g = 1 class
            classes.emplace(cusp_key(N, c, a1), CuspClass{c, a1});
        }
    }
    return classes;
}

// Whether the cusp with invariants (c, a1) is regular for Gamma_H: scanning
// widths t (multiples of N / gcd(N, c^2)), the first parabolic +-P_t landing
// in Gamma_H must do so with the + sign.  With -1 in H every cusp is regular.
bool cusp_regular(uint64_t N, const std::vector<char>& in_h, uint64_t c, uint64_t a1) {
    uint64_t ci = (c == 0) ? N : c;
    uint64_t g = gcd_u64(ci, N);
    // Integer lift a of a1 mod g with gcd(a, ci) = 1.
    uint64_t a = a1;
    if (ci == N && a == 0) a = 1;  // only when N = 1
    uint64_t guard = 0;
    while (gcd_u64(a, ci) != 1) {
        a += g;
        if (++guard > ci + N) fail(ErrorCode::Internal, "no coprime cusp lift");
    }
    uint64_t c2 = mulmod_u32(ci % N, ci % N, N);
    uint64_t t0 = N / gcd_u64(N, c2 == 0 ? N : c2);
    uint64_t step = mulmod_u32(t0 % N, mulmod_u32(a % N, ci % N, N), N);
    uint64_t phi_bound = 4 * euler_phi(N) + 8;
    uint64_t u = 1;
    for (uint64_t s = 1; s <= phi_bound; ++s) {
        u = (u + step) % N;  // u = 1 + s*t0*a*c mod N
        if (in_h[u]) return true;
        if (in_h[(N - u) % N]) return false;
    }
    fail(ErrorCode::Internal, "cusp regularity scan did not terminate");
}

struct HData {
    uint64_t N;
    std::vector<char> in_h;
    std::vector<char> in_pmh;
    uint64_t phi;
    uint64_t size_pmh;
    bool minus_one;
};

HData make_hdata(uint64_t N, const std::vector<char>& in_h) {
    if (in_h.size() != N) fail(ErrorCode::UsageError, "membership table size != N");
    HData h;
    h.N = N;
    h.in_h = in_h;
    h.in_pmh.assign(N, 0);
    h.phi = 0;
    h.size_pmh = 0;
    for (uint64_t x = 0; x < N; ++x) {
        if (gcd_u64(x == 0 ? N : x, N) != 1) continue;
        ++h.phi;
        if (in_h[x] || in_h[(N - x) % N]) {
            h.in_pmh[x] = 1;
            ++h.size_pmh;
        }
    }
    if (N >= 2 && !in_h[1]) fail(ErrorCode::UsageError, "membership table omits 1");
    h.minus_one = (N <= 2) ? true : static_cast<bool>(in_h[N - 1]);
    return h;
}

}  // namespace

std::vector<char> kernel_table(const DirichletChar& chi) {
    uint64_t N = chi.modulus();
    std::vector<char> in_h(N, 0);
    if (N == 1) {
        in_h[0] = 1;  // the unit group mod 1 is trivial
        return in_h;
    }
    for (uint64_t x = 1; x < N; ++x)
        if (gcd_u64(x, N) == 1 && chi.kernel_contains(x)) in_h[x] = 1;
    return in_h;
}

CurveData curve_data(uint64_t N, const std::vector<char>& in_h) {
    if (N == 0) fail(ErrorCode::UsageError, "level must be positive");
    CurveData cd;
    cd.N = N;
    if (N == 1) {
        cd.index_psl = 1;
        cd.eps2 = 1;
        cd.eps3 = 1;
        cd.cusps = cd.cusps_regular = 1;
        cd.genus = 0;
        cd.minus_one_in_h = true;
        return cd;
    }
    HData h = make_hdata(N, in_h);
    cd.minus_one_in_h = h.minus_one;
    uint64_t q_size = h.phi / h.size_pmh;  // |(Z/N)^* / +-H|
    cd.index_psl = gamma0_index(N) * q_size;

    // Elliptic points: solutions d of d^2+1 = 0 (period 2) resp. d^2+d+1 = 0
    // (period 3) mod N, each contributing q_size points when d lies in +-H.
    for (uint64_t d = 0; d < N; ++d) {
        uint64_t d2 = mulmod_u32(d, d, N);
        if ((d2 + 1) % N == 0 && h.in_pmh[d]) cd.eps2 += q_size;
        if ((d2 + d + 1) % N == 0 && h.in_pmh[d]) cd.eps3 += q_size;
    }

    // Cusps: +-H-orbits of the folded Gamma_1(N) classes.
    auto classes = gamma1_cusp_classes(N);
    std::vector<uint64_t> units;
    for (uint64_t x = 1; x < N; ++x)
        if (h.in_h[x]) units.push_back(x);
    std::set<uint64_t> seen;
    for (const auto& [key, cls] : classes) {
        if (seen.count(key)) continue;
        for (uint64_t d : units) {
            uint64_t g = (cls.c == 0) ? N : gcd_u64(cls.c, N);
            uint64_t dinv = invmod_u64(d, N);
            uint64_t img = cusp_key(N, mulmod_u32(d, cls.c, N),
                                    mulmod_u32(dinv % g, cls.a1 % g, g == 0 ? 1 : g));
            seen.insert(img);
        }
        seen.insert(key);
        ++cd.cusps;
        if (cusp_regular(N, h.in_h, cls.c, cls.a1))
            ++cd.cusps_regular;
        else
            ++cd.cusps_irregular;
    }

    int64_t twelve_g = 12 + static_cast<int64_t>(cd.index_psl) - 3 * static_cast<int64_t>(cd.eps2) -
                       4 * static_cast<int64_t>(cd.eps3) - 6 * static_cast<int64_t>(cd.cusps);
    if (twelve_g % 12 != 0) fail(ErrorCode::Internal, "genus formula not integral");
    cd.genus = twelve_g / 12;
    if (cd.genus < 0) fail(ErrorCode::Internal, "negative genus");
    return cd;
}

int64_t dim_mk_gamma_h(uint64_t N, const std::vector<char>& in_h, uint32_t k) {
    if (k == 1) fail(ErrorCode::WeightOneUnsupported, "no dimension formula in weight 1");
    if (k == 0) return 1;
    CurveData cd = curve_data(N, in_h);
    int64_t km1_gm1 = static_cast<int64_t>(k - 1) * (cd.genus - 1);
    if (k % 2 == 0) {
        return km1_gm1 + static_cast<int64_t>(k / 4) * static_cast<int64_t>(cd.eps2) +
               static_cast<int64_t>(k / 3) * static_cast<int64_t>(cd.eps3) +
               static_cast<int64_t>(k / 2) * static_cast<int64_t>(cd.cusps);
    }
    if (cd.minus_one_in_h) return 0;
    if (cd.eps2 != 0) fail(ErrorCode::Internal, "period-2 point without -1 in H");
    // 2*dim to keep the half-integral cusp term exact.
    int64_t twice = 2 * (km1_gm1 + static_cast<int64_t>(k / 3) * static_cast<int64_t>(cd.eps3)) +
                    static_cast<int64_t>(k) * static_cast<int64_t>(cd.cusps_regular) +
                    static_cast<int64_t>(k - 1) * static_cast<int64_t>(cd.cusps_irregular);
    if (twice % 2 != 0) fail(ErrorCode::Internal, "odd-weight dimension not integral");
    int64_t dim = twice / 2;
    return dim < 0 ? 0 : dim;
}

int64_t dim_mk_chi(const DirichletChar& chi, uint32_t k) {
    if (k == 1) fail(ErrorCode::WeightOneUnsupported, "no dimension formula in weight 1");
    bool even_k = (k % 2 == 0);
    if (chi.is_even() != even_k) return 0;
    if (k == 0) return chi.is_trivial() ? 1 : 0;
    uint64_t m = chi.order();
    int64_t total = dim_mk_gamma_h(chi.modulus(), kernel_table(chi), k);
    for (uint64_t e : divisors_u64(m)) {
        if (e == m) continue;
        total -= static_cast<int64_t>(euler_phi(e)) * dim_mk_chi(chi.power(m / e), k);
    }
    int64_t phim = static_cast<int64_t>(euler_phi(m));
    if (total % phim != 0) fail(ErrorCode::Internal, "character dimension not integral");
    return total / phim;
}

}  // namespace thd
