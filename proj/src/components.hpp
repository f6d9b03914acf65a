#pragma once
// Localization of a modular-forms space at systems of Hecke eigenvalues:
// full decomposition under the prime-to-pN operators, targeted generalized
// cuts at a known eigensystem, restriction of operators to a component, and
// the oldform 2x2 degeneracy block at an auxiliary prime.

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "eisbasis.hpp"
#include "hecke.hpp"
#include "matfq.hpp"
#include "qseries.hpp"

namespace thd {

// Prime-indexed eigenvalues.  `anaemic` holds T_ell values for primes away
// from p and the level; `extended` holds pinned U_ell (ell | level) and T_p
// values.  Both lists stay sorted by prime.
struct Eigensystem {
    std::vector<std::pair<uint64_t, Fq>> anaemic;
    std::vector<std::pair<uint64_t, Fq>> extended;

    const Fq* anaemic_value(uint64_t ell) const;
    const Fq* extended_value(uint64_t ell) const;
    void set_anaemic(uint64_t ell, const Fq& a);
    void set_extended(uint64_t ell, const Fq& a);
};

// A generalized eigenspace inside a parent space: reduced-echelon rows at
// the parent precision plus operator matrices restricted to it.  The parent
// pointer is non-owning; the space must outlive the component.
struct LocalComponent {
    const ModFormSpace* parent = nullptr;
    Eigensystem eigen;
    RowSpace rows;
    std::map<uint64_t, MatFq> ops;

    explicit LocalComponent(const ModFormSpace& sp)
        : parent(&sp), rows(sp.field(), sp.prec()) {}

    uint32_t dim() const { return rows.rank(); }
    // Largest pivot index; elements are determined by coefficients up to it.
    uint32_t max_pivot() const { return rows.rank() ? rows.pivots().back() : 0; }
};

// Matrix of T_ell (U_ell when ell | level, the U_p reading of T_p when
// ell = p) on a reduced-echelon row space of weight-k chi expansions that
// the operator preserves.  Sound whenever the truncated image precision
// still covers every pivot: coordinates are read off at the pivots and the
// claim is verified on the whole image prefix.  AmbiguousSolve when the
// precision cannot reach the last pivot, NotInSpan when an image escapes.
MatFq restricted_matrix(const RowSpace& rows, uint64_t ell, uint32_t k, const DirichletChar& chi);

// Cached per-component variant.  On first computation the matrix is checked
// to commute with every already-stored operator, and (T_ell - a_ell) is
// checked nilpotent whenever the eigensystem pins a_ell.
const MatFq& component_matrix(LocalComponent& c, uint64_t ell);

// Descriptor form; Diamond is the scalar chi(d) on the component.
MatFq operator_matrix(LocalComponent& c, const OpDesc& op);

// Roots of a nonzero polynomial (ascending coefficients) in its coefficient
// field, with multiplicities, by exhaustive scan; the field must be small.
std::vector<std::pair<Fq, uint32_t>> poly_roots(const std::vector<Fq>& poly);

// Simultaneous generalized-eigenspace decomposition under T_ell for every
// prime ell <= lbound away from p and the level.  lbound must reach the
// vanishing-order bound so that eigensystems separate components.  When a
// characteristic polynomial fails to split, FieldTooSmall names the
// coefficient-field degree that would suffice.
std::vector<LocalComponent> anemic_decompose(const ModFormSpace& sp, uint64_t lbound);

// The generalized eigenspace of one known eigensystem: successive cuts by
// ker((T_ell - a_ell)^dim) over the primes listed in eigen.anaemic.
// Returns a zero-dimensional component when the system misses the space.
LocalComponent component_cut(const ModFormSpace& sp, const Eigensystem& eigen);

// One localization stage: generalized kernel of (T_ell - a) on the
// component, with the pin recorded.  ell must be prime and away from p and
// the level; staged callers use this to cut by cheap operators first, since
// pivots only shrink under cuts and later stages then need less precision.
LocalComponent refine_cut(const LocalComponent& c, uint64_t ell, const Fq& a);

// Further generalized-kernel cut by (U_ell - a) or (T_p - a) for each
// listed extended prime.  Each value must be an eigenvalue of the
// restricted operator (NotAnEigenvalue otherwise); an empty list copies.
LocalComponent localize_extended(const LocalComponent& c,
                                 const std::vector<std::pair<uint64_t, Fq>>& extra);

// f(q) and f(q^ell) inside `big`, whose level must be ell times the level
// of f (so ell itself cannot divide the old level).  Membership of both
// copies in the big space is verified by row reduction.
std::pair<QExpansion, QExpansion> oldform_embed(const ModFormSpace& big, const QExpansion& f,
                                                uint64_t ell);

// U_ell on span{f(q), f(q^ell)} inside `big`, written in the ordered basis
// (f(q), f(q^ell)) and compared against [[t, chi_old(ell) ell^{k-1}],
// [-1, 0]], where chi_old is the nebentypus of f at its own level.
struct UlBlock {
    MatFq matrix;
    MatFq expected;
    bool matches = false;
    std::vector<std::pair<Fq, uint32_t>> eigenvalues;
    bool split = false;
    bool repeated_root = false;
    // Repeated root b with (U - b)^2 = 0 but U != b: a nontrivial Jordan
    // block, which the degeneracy structure allows.
    bool nonsemisimple = false;
};
UlBlock ul_block_check(const ModFormSpace& big, const QExpansion& f, uint64_t ell, const Fq& t_ell,
                       const DirichletChar& chi_old);

// The invertible U_p eigenvalue on a component whose extended system pins
// T_p (or whose restricted T_p has a single eigenvalue).  In residue
// characteristic p the crystalline quadratic X^2 - a_p X + <p> p^{k-1}
// degenerates to X(X - a_p), which the flag records; NonOrdinary when
// a_p = 0.
struct UnitRoot {
    Fq value;
    bool quadratic_degenerate = true;
};
UnitRoot unit_root_up(LocalComponent& c);

}  // namespace thd
