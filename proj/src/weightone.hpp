#pragma once
// Weight-one forms mod p pulled out of the weight-p space through the theta
// kernel, the torsion-count identity, the maximal doubled submodule with its
// duality pairing.

#include <cstdint>
#include <vector>

#include "components.hpp"
#include "localalg.hpp"

namespace thd {

// Elements of the component killed by theta, un-V'd: each kernel element g
// has V(f) = g for the returned f with a_n(f) = a_{np}(g), at precision
// floor((prec-1)/p) + 1.  Vanishing of the prime-to-p coefficients is imposed
// below the weight-(k+p+1) vanishing-order bound and then certified through
// full precision.  At weight exactly p the outputs are weight-one forms; the
// kernel cut itself makes sense (and is usually empty) at any weight.
// Requires level prime to p and un-V precision at least the weight-one
// vanishing bound.
std::vector<QExpansion> weight_one_space(const LocalComponent& c);

struct CountReport {
    std::vector<std::pair<Fq, uint32_t>> d_tilde;  // torsion dim per T_p eigenvalue
    uint32_t d_anemic = 0;                         // torsion under the operators away from pN
    uint32_t d_w1 = 0;                             // strict-torsion theta-kernel dimension
    bool verdict = false;  // every d_tilde = 1, d_anemic = 1 + d_w1, d_w1 <= 1
};

// Strict torsion dimensions on a localized component.  d_anemic is the
// simultaneous kernel of (T_ell - a_ell) over primes ell <= sturm coprime to
// pN, eigenvalues taken from the pinned eigensystem or read off the
// restricted operator; each d_tilde entry adjoins (T_p - alpha) for one
// eigenvalue choice (all eigenvalues of the restricted T_p when no choices
// are supplied).  d_w1 is the strict-torsion part of the theta kernel — the
// count identity pairs it with d_anemic; the full localized kernel is what
// weight_one_space returns and can be strictly bigger.  op_primes, when
// nonempty, replaces the default full sweep with a chosen generating set
// (large levels: only operators whose truncation is sound at the working
// precision).
CountReport count_identity(LocalComponent& c, const std::vector<Fq>& ap_choices = {},
                           const std::vector<uint64_t>& op_primes = {});

struct DoubledData {
    FiniteAlgebra anaemic_alg;   // T, generated by the operators away from pN
    FiniteAlgebra extended_alg;  // T-tilde = T with T_p adjoined
    std::vector<MatFq> j_ideal;  // J = Ann_T(T-tilde/T)
    MatFq j_torsion;             // M[J] as columns
    uint32_t len_t_mod_j = 0;
    uint32_t len_t_mod_ann = 0;   // length of T / Ann_T(M[J])
    uint32_t len_tt_mod_ann = 0;  // length of T-tilde / Ann_{T-tilde}(M[J])
    bool doubled = false;         // len_tt_mod_ann = 2 * len_t_mod_ann
};

// The maximal doubled submodule M[J] and the length bookkeeping around it.
// op_primes as in count_identity.
DoubledData doubled_submodule(LocalComponent& c, const std::vector<uint64_t>& op_primes = {});

struct PairingData {
    MatFq gram;  // <t_i, f_j> = a_1(t_i f_j)
    uint32_t rank = 0;
    uint32_t theta_coker_dim = 0;  // dim of M[J] / ker(theta)
    bool perfect = false;          // rank = length(T/J) = theta_coker_dim
};

// Gram matrix of the a_1 pairing between representatives of T/J and of the
// component modulo its theta kernel.
PairingData pairing_gram(LocalComponent& c, const DoubledData& dd);

}  // namespace thd
