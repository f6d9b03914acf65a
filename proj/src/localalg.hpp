#pragma once
// Finite commutative matrix algebras over F_{p^r}: closure of a set of
// commuting operators, lengths, annihilator ideals, and an exact checker for
// the dual-number relations that detect first-order deformations.

#include <cstdint>
#include <vector>

#include "matfq.hpp"

namespace thd {

// Echelonized span of flat coefficient vectors of a fixed width; the vector
// analogue of RowSpace.  Rows are kept in reduced form, pivot-sorted.
class FlatSpan {
public:
    FlatSpan(Ctx ctx, size_t width) : ctx_(std::move(ctx)), width_(width) {}

    // Returns true when v was independent of the current span.
    bool insert(std::vector<Fq> v);
    // Residual of v after eliminating every pivot; zero iff v is in the span.
    std::vector<Fq> reduce(std::vector<Fq> v) const;
    bool contains(const std::vector<Fq>& v) const;
    // Coordinates of v in rows(); NotInSpan when the residual is nonzero.
    std::vector<Fq> coordinates(const std::vector<Fq>& v) const;

    size_t dim() const { return rows_.size(); }
    size_t width() const { return width_; }
    const Ctx& ctx() const { return ctx_; }
    const std::vector<std::vector<Fq>>& rows() const { return rows_; }
    const std::vector<size_t>& pivots() const { return pivots_; }

private:
    Ctx ctx_;
    size_t width_;
    std::vector<std::vector<Fq>> rows_;
    std::vector<size_t> pivots_;
};

// Unital commutative subalgebra of End(F_q^n), carried as an echelon basis of
// n x n matrices.  Length means dimension as an F_q vector space; every
// identity checked downstream is a ratio, so the working field is used
// consistently on both sides.
class FiniteAlgebra {
public:
    // Closure of {identity} and the generators under products.  The ambient
    // size n and the field are explicit so an empty generator list (the
    // length-one algebra) is expressible.  Throws NonCommuting unless the
    // generators commute pairwise, and FieldTooSmall when some generator's
    // eigenvalues do not all lie in F_q (the semi-local structure is part of
    // the construction).
    static FiniteAlgebra closure(Ctx ctx, size_t n, const std::vector<MatFq>& gens);

    const Ctx& ctx() const { return ctx_; }
    size_t nspace() const { return n_; }  // ambient matrix size
    uint32_t length() const { return uint32_t(basis_.size()); }
    const std::vector<MatFq>& basis() const { return basis_; }
    const std::vector<MatFq>& gens() const { return gens_; }
    MatFq unit() const { return MatFq::identity(ctx_, n_); }

    bool contains(const MatFq& m) const;
    // Coordinates in basis(); NotInSpan if m lies outside the algebra.
    std::vector<Fq> coordinates(const MatFq& m) const;
    MatFq combine(const std::vector<Fq>& coords) const;

    // Characters of the algebra, one per maximal ideal: characters()[k][j] is
    // the eigenvalue of gens()[j] on the k-th simultaneous generalized
    // eigenspace of the ambient module.  Sorted lexicographically; a local
    // algebra has exactly one.
    const std::vector<std::vector<Fq>>& characters() const { return characters_; }
    bool is_local() const { return characters_.size() == 1; }

    // Multiplication-by-generator matrices on the algebra itself in basis()
    // coordinates: the regular module.
    std::vector<MatFq> regular_gens() const;

private:
    FiniteAlgebra(Ctx ctx, size_t n) : ctx_(std::move(ctx)), n_(n), flat_(ctx_, n * n) {}
    void compute_characters();

    Ctx ctx_;
    size_t n_;
    FlatSpan flat_;
    std::vector<MatFq> basis_;  // unflattened flat_.rows(), same order
    std::vector<MatFq> gens_;
    std::vector<std::vector<Fq>> characters_;
};

// Basis (as columns, n x d) of the simultaneous kernel of the given n x n
// matrices; the whole space when the list is empty.
MatFq simultaneous_kernel(const Ctx& ctx, size_t n, const std::vector<MatFq>& mats);

// Dimension of the [m]-torsion of the ambient module: the simultaneous kernel
// of (g - lambda(g)) over all generators g, lambda the residue eigenvalue.
// The one-argument form requires a local algebra (UsageError otherwise); the
// character index picks the maximal ideal of a semi-local one.
uint32_t m_torsion_dim(const FiniteAlgebra& alg);
uint32_t m_torsion_dim(const FiniteAlgebra& alg, size_t character_index);

// J = {a in sub : a * amb is contained in sub}, the annihilator of the
// quotient bimodule amb/sub.  Requires sub to be a subalgebra of amb
// (NotSubalgebra otherwise); the result is returned as a deterministic
// echelon basis and verified exactly to be an ideal of amb, and to contain
// every basis element of sub that multiplies amb into sub.
std::vector<MatFq> annihilator_of_quotient(const FiniteAlgebra& sub, const FiniteAlgebra& amb);

// Ann_alg(W) = {a in alg : a * W = 0} for the submodule spanned by the
// columns of W; automatically an ideal.  Echelon basis.
std::vector<MatFq> annihilator_of_submodule(const FiniteAlgebra& alg, const MatFq& submodule_cols);

// length(alg / ideal) for an ideal given by linearly independent elements of
// the algebra (validated; the span is taken as an F_q subspace).
uint32_t quotient_length(const FiniteAlgebra& alg, const std::vector<MatFq>& ideal);

// Subset of alg.basis() whose classes form a vector-space basis of the
// quotient alg/ideal.
std::vector<MatFq> quotient_representatives(const FiniteAlgebra& alg, const std::vector<MatFq>& ideal);

// --- dual numbers -----------------------------------------------------------
// k[eps]/eps^2 arithmetic, entries split as value + eps * derivative.

struct DualScalar {
    Fq a, b;  // a + eps b
};

struct DualMat {
    MatFq a, b;  // a + eps b

    DualMat operator+(const DualMat& o) const { return {a + o.a, b + o.b}; }
    DualMat operator-(const DualMat& o) const { return {a - o.a, b - o.b}; }
    DualMat operator*(const DualMat& o) const { return {a * o.a, a * o.b + b * o.a}; }
    bool is_zero() const { return a.is_zero() && b.is_zero(); }
};

// A first-order deformation datum: 2x2 matrices rho(tau), rho(phi) over
// k[eps]/eps^2 together with the unit alpha whose pair {alpha, 1/alpha} is
// the intended spectrum of rho(phi).  Construction enforces the shape the
// relation checker presumes: rho(tau) = identity mod eps, alpha a unit, and
// det rho(phi) = 1 exactly.
class DualNumberRep {
public:
    DualNumberRep(DualMat tau, DualMat phi, DualScalar alpha);

    const Ctx& ctx() const { return tau_.a.ctx(); }
    const DualMat& tau() const { return tau_; }
    const DualMat& phi() const { return phi_; }
    const DualScalar& alpha() const { return alpha_; }
    DualScalar alpha_inv() const;

private:
    DualMat tau_, phi_;
    DualScalar alpha_;
};

// The five relations, evaluated exactly over k[eps]/eps^2.  With tau trivial
// mod eps, every relation except the trace lands in eps^2 automatically when
// phi is scalar +-1 mod eps; the trace is the one real condition.
struct DualCheck {
    bool trace_two;      // tr rho(tau) = 2
    bool tau_unipotent;  // (rho(tau) - 1)^2 = 0
    bool tau_phi;        // (rho(tau) - 1)(rho(phi) - alpha) = 0
    bool phi_tau;        // (rho(phi) - 1/alpha)(rho(tau) - 1) = 0
    bool phi_quadratic;  // (rho(phi) - alpha)(rho(phi) - 1/alpha) = 0
    bool all() const { return trace_two && tau_unipotent && tau_phi && phi_tau && phi_quadratic; }
};

DualCheck dual_number_check(const DualNumberRep& rep);

}  // namespace thd
