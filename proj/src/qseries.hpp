#pragma once
// Truncated q-expansions over a finite field, packed as bytes: coefficient of
// q^n occupies r bytes starting at offset n*r (little-endian polynomial
// coefficients).  This layout doubles as the on-disk row format.

#include <cstdint>
#include <vector>

#include "ff.hpp"

namespace thd {

class QExpansion {
public:
    QExpansion() = default;
    QExpansion(Ctx ctx, uint32_t prec);  // zero series

    const Ctx& ctx() const { return ctx_; }
    uint32_t prec() const { return prec_; }
    const std::vector<uint8_t>& data() const { return data_; }
    std::vector<uint8_t>& data() { return data_; }

    Fq coeff(uint32_t n) const;
    void set_coeff(uint32_t n, const Fq& v);
    void set_coeff_int(uint32_t n, int64_t v);
    bool is_zero() const;

    QExpansion truncate(uint32_t new_prec) const;  // new_prec <= prec

    QExpansion operator+(const QExpansion& o) const;
    QExpansion operator-(const QExpansion& o) const;
    QExpansion operator*(const QExpansion& o) const;  // prec = min of the two
    QExpansion scaled(const Fq& c) const;

    bool operator==(const QExpansion& o) const;

private:
    Ctx ctx_;
    uint32_t prec_ = 0;
    std::vector<uint8_t> data_;
};

// Coefficientwise n * a_n (the weight-raising differential operator).
QExpansion theta_op(const QExpansion& f);
// q -> q^m substitution; requires f.prec() >= ceil(out_prec / m).
QExpansion v_op(const QExpansion& f, uint32_t m, uint32_t out_prec);
// a_n -> a_{n*ell}; output precision floor((prec-1)/ell) + 1.
QExpansion u_op(const QExpansion& f, uint32_t ell);

// Exact in-F_p convolution of byte sequences (values in [0,p)), truncated to
// out_len terms.  Dispatches between schoolbook and a number-theoretic
// transform depending on size.
void convolve_fp(const uint8_t* a, size_t na, const uint8_t* b, size_t nb, uint8_t* out, size_t out_len,
                 uint32_t p);

// y += c * x over F_p on n bytes (values in [0,p)).
void axpy_fp(uint8_t* y, const uint8_t* x, uint32_t c, size_t n, uint32_t p);
// y *= c.
void scale_fp(uint8_t* y, uint32_t c, size_t n, uint32_t p);

// Row echelon span of packed q-expansions, maintained incrementally in
// reduced form; rows are ordered by pivot (first nonzero coefficient index).
class RowSpace {
public:
    RowSpace(Ctx ctx, uint32_t prec);

    uint32_t rank() const { return uint32_t(rows_.size()); }
    uint32_t prec() const { return prec_; }
    const Ctx& ctx() const { return ctx_; }
    const std::vector<uint32_t>& pivots() const { return pivots_; }
    const std::vector<uint8_t>& row(uint32_t i) const { return rows_[i]; }
    QExpansion row_series(uint32_t i) const;

    // Inserts the series if independent; returns true when the rank grew.
    bool insert(const QExpansion& f);

    // Coordinates of f in the span using pivot columns, then verifies the
    // claim on every coefficient; throws NotInSpan if f is outside.
    std::vector<Fq> coordinates(const QExpansion& f) const;
    bool contains(const QExpansion& f) const;

    // Linear combination with the given coordinates.
    QExpansion combine(const std::vector<Fq>& coords) const;

private:
    void reduce_in_place(std::vector<uint8_t>& v) const;
    Ctx ctx_;
    uint32_t prec_;
    std::vector<std::vector<uint8_t>> rows_;
    std::vector<uint32_t> pivots_;
};

}  // namespace thd
