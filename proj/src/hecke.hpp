#pragma once
// Hecke operators on q-expansions:
//   a_m(T_ell f) = a_{ell m} + chi(ell) ell^{k-1} a_{m/ell}
// for ell prime (the second term only when ell | m).  chi(ell) = 0 when
// ell divides the level, so the same formula is U_ell there; likewise
// T_p = U_p in characteristic p for weight >= 2.

#include <cstdint>

#include "characters.hpp"
#include "eisbasis.hpp"
#include "matfq.hpp"
#include "qseries.hpp"

namespace thd {

// One prime operator on a weight-k nebentypus-chi expansion.  Output
// precision is floor((prec-1)/ell) + 1.
QExpansion hecke_tl(const QExpansion& f, uint64_t ell, uint32_t k, const DirichletChar& chi);

// T_n for any n >= 1: multiplicative across coprime prime powers, with
// T_{ell^{e+1}} = T_ell T_{ell^e} - chi(ell) ell^{k-1} T_{ell^{e-1}}.
// Output precision is floor((prec-1)/n) + 1.
QExpansion hecke_tn(const QExpansion& f, uint64_t n, uint32_t k, const DirichletChar& chi);

// Operator descriptor, used for matrix construction and in reports.  Tl
// wants a prime away from p and the level, Ul a prime dividing the level,
// Tp the characteristic itself, Diamond a unit mod the level.
struct OpDesc {
    enum class Kind { Tl, Ul, Tp, Diamond } kind;
    uint64_t n;
};

// Matrix of T_ell on the basis of sp, column j = coordinates of the image
// of basis vector j.  Requires the truncated precision to stay at or above
// the vanishing-order bound so coordinates remain certified.
MatFq hecke_matrix(const ModFormSpace& sp, uint64_t ell);

// The basis row space truncated to new_prec (>= the vanishing-order bound,
// so rank is preserved).  Useful wherever operator images live at shorter
// precision than the space.
RowSpace truncated_basis(const ModFormSpace& sp, uint32_t new_prec);

// Matrix of the described operator on the basis of sp.  Diamond operators
// act as the scalar chi(d); the rest go through hecke_matrix after the
// descriptor's divisibility conditions are checked.
MatFq operator_matrix(const ModFormSpace& sp, const OpDesc& op);

}  // namespace thd
