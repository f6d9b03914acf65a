#pragma once
// Dirichlet characters presented on an explicit cyclic decomposition of
// (Z/N)^*.  A character is stored combinatorially (exponents on the factor
// generators); values are produced either exactly in Q(zeta) or in a finite
// field, through the same root-of-unity tower so the two agree under
// reduction.

#include <cstdint>
#include <string>
#include <vector>

#include "cyclotomic.hpp"
#include "ff.hpp"

namespace thd {

struct UnitFactor {
    uint64_t prime;      // underlying prime
    uint32_t power;      // exponent: factor modulus = prime^power (2^k splits below)
    uint64_t modulus;    // prime^power
    uint64_t gen;        // generator of this cyclic factor, lifted mod N
    uint64_t order;      // order of the factor
    bool is_sign;        // the <-1> part of (Z/2^k)^* for k >= 3
};

// Cyclic decomposition of (Z/N)^* with canonical generators (smallest
// primitive root per odd prime power; -1 and 5 at powers of two).
class UnitGroup {
public:
    explicit UnitGroup(uint64_t N);

    uint64_t N() const { return N_; }
    const std::vector<UnitFactor>& factors() const { return f_; }
    // Exponent vector of a unit with respect to the factor generators.
    std::vector<uint64_t> dlog(uint64_t x) const;

private:
    uint64_t N_;
    std::vector<UnitFactor> f_;
    // per factor: table residue (mod factor modulus) -> exponent
    std::vector<std::vector<uint32_t>> tables_;
};

class DirichletChar {
public:
    // exps[i] < factors[i].order; label "N:e1,e2,..." or "trivial".
    DirichletChar(std::shared_ptr<const UnitGroup> G, std::vector<uint64_t> exps);

    static DirichletChar trivial(std::shared_ptr<const UnitGroup> G);
    static DirichletChar parse(std::shared_ptr<const UnitGroup> G, const std::string& label);

    uint64_t modulus() const { return G_->N(); }
    const std::vector<uint64_t>& exps() const { return exps_; }
    const UnitGroup& group() const { return *G_; }
    std::shared_ptr<const UnitGroup> group_ptr() const { return G_; }

    uint64_t order() const;
    uint64_t conductor() const;
    bool is_even() const;  // value at -1
    bool is_trivial() const;
    std::string label() const;

    // chi * psi on the same group.
    DirichletChar operator*(const DirichletChar& o) const;
    DirichletChar power(uint64_t t) const;  // chi^t
    DirichletChar galois_p(uint64_t p) const { return power(p); }

    bool operator==(const DirichletChar& o) const;

    // True when chi(x) = 1 (x must be a unit mod N).
    bool kernel_contains(uint64_t x) const;

    // The character mod G_big->N() (a multiple of this modulus) acting
    // through reduction; the conductor is unchanged.
    DirichletChar induce(std::shared_ptr<const UnitGroup> G_big) const;

    // Exact value as an element of Q(zeta_ord) for ord = order().
    CycRat value_cyc(const CycPtr& cyc, uint64_t n) const;
    // Value table over a finite field: N entries of r bytes (0 on non-units).
    std::vector<uint8_t> value_table(const Ctx& field) const;
    Fq value_fq(const Ctx& field, uint64_t n) const;

    // The primitive character inducing this one, on a group mod conductor().
    DirichletChar primitive_part() const;

private:
    std::shared_ptr<const UnitGroup> G_;
    std::vector<uint64_t> exps_;
};

// Smallest r such that every n-th root of unity needed by the character
// (n = prime-to-p part of its order) lies in F_{p^r}.
uint32_t char_field_degree(const DirichletChar& chi, uint64_t p);

// All characters of the group whose order is prime to p, as exponent vectors.
std::vector<DirichletChar> enumerate_prime_to_p_chars(std::shared_ptr<const UnitGroup> G, uint64_t p);

}  // namespace thd
