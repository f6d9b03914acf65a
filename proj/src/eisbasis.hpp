#pragma once
// Bases of the weight-k level-N nebentypus-chi form space over the finite
// field generated by the character values mod p.  Spanning sets come from
// Eisenstein series and their products, generated over an auxiliary
// extension field and descended to the target field by traces; the span is
// certified complete against the dimension formula.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "characters.hpp"
#include "cyclotomic.hpp"
#include "dims.hpp"
#include "qseries.hpp"

namespace thd {

// Generalized Bernoulli number attached to chi, exact in Q(zeta_ord(chi)).
CycRat gen_bernoulli(const DirichletChar& chi, uint32_t k);

// q-expansion over F of the Eisenstein series attached to a pair of
// primitive characters:  sum over d | n of psi(n/d) phi(d) d^{k-1},
// with constant term -B_{k,phi}/2k when psi has modulus 1, scaled by the
// smallest power of p making every coefficient p-integral.
// ParityMismatch unless (psi*phi)(-1) = (-1)^k.
QExpansion eisenstein_qexp(const DirichletChar& psi, const DirichletChar& phi, uint32_t k,
                           uint32_t prec, const Ctx& F);

// E_2(q) - t*E_2(q^t) for t >= 2, the weight-2 form on Gamma_0(t) with
// constant term (t-1)/24.
QExpansion e2_imprimitive(uint64_t t, uint32_t prec, const Ctx& F);

// Vanishing-order bound: a weight-k form on Gamma_0(N) with nebentypus whose
// q-expansion vanishes through this many terms is zero (valid mod p).
uint32_t sturm_bound(uint64_t N, uint32_t k);

class ModFormSpace {
public:
    // Builds (or loads from cache_dir, if non-empty) the reduced-echelon
    // basis at the given precision.  Requires prec >= sturm_bound(N, k).
    // r_min > 0 forces the coefficient field up to at least that degree
    // (rounded to a multiple of the degree the character values need).
    static ModFormSpace build(uint64_t p, uint64_t N, uint32_t k, const std::string& chi_label,
                              uint32_t prec, const std::string& cache_dir, uint32_t r_min = 0);

    uint64_t p() const { return p_; }
    uint64_t level() const { return N_; }
    uint32_t weight() const { return k_; }
    const DirichletChar& chi() const { return chi_.value(); }
    const Ctx& field() const { return F_; }
    uint32_t prec() const { return prec_; }
    uint32_t dim() const { return basis_.rank(); }
    uint32_t sturm() const { return sturm_; }

    const RowSpace& basis() const { return basis_; }
    QExpansion basis_vector(uint32_t i) const { return basis_.row_series(i); }
    bool contains(const QExpansion& f) const { return basis_.contains(f); }
    std::vector<Fq> coordinates(const QExpansion& f) const { return basis_.coordinates(f); }

private:
    ModFormSpace(uint64_t p, uint64_t N, uint32_t k, DirichletChar chi, Ctx F, uint32_t prec);
    void generate();
    std::string cache_name() const;
    bool load_cache(const std::string& dir);
    void save_cache(const std::string& dir) const;

    uint64_t p_;
    uint64_t N_;
    uint32_t k_;
    std::optional<DirichletChar> chi_;
    Ctx F_;
    uint32_t prec_;
    uint32_t sturm_ = 0;
    int64_t dim_formula_ = 0;
    RowSpace basis_;
};

}  // namespace thd
