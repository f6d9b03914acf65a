#pragma once
// Dense matrices over F_{p^r}.  Vectors are columns: a matrix applied to a
// coordinate vector acts on the left, and entry (i, j) is the i-th coordinate
// of the image of the j-th basis vector.

#include <cstdint>
#include <vector>

#include "ff.hpp"

namespace thd {

class MatFq {
public:
    MatFq() = default;
    MatFq(Ctx ctx, size_t rows, size_t cols);  // zero matrix
    static MatFq identity(Ctx ctx, size_t n);

    const Ctx& ctx() const { return ctx_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    Fq at(size_t i, size_t j) const;
    void set(size_t i, size_t j, const Fq& v);
    void set_int(size_t i, size_t j, int64_t v);

    bool operator==(const MatFq& o) const;
    bool operator!=(const MatFq& o) const { return !(*this == o); }
    bool is_zero() const;

    MatFq operator+(const MatFq& o) const;
    MatFq operator-(const MatFq& o) const;
    MatFq operator*(const MatFq& o) const;
    MatFq scaled(const Fq& c) const;
    MatFq transpose() const;
    MatFq pow(uint64_t e) const;

    static MatFq hcat(const MatFq& a, const MatFq& b);
    MatFq columns(const std::vector<size_t>& js) const;

    // In-place reduced row echelon form; returns the pivot column indices.
    std::vector<size_t> rref_in_place();
    size_t rank() const;

    // Kernel basis as columns (cols() x nullity).
    MatFq nullspace() const;
    // Basis of ker(M^inf), stabilized by repeated squaring of the power.
    // Requires a square matrix; *power_out (optional) receives a power at
    // which the kernel has stabilized.
    MatFq generalized_nullspace(size_t* power_out = nullptr) const;

    // Monic characteristic polynomial, ascending coefficients, length n+1.
    std::vector<Fq> charpoly() const;

    // Solve (*this) * X = B.  NotInSpan if inconsistent, AmbiguousSolve if
    // the solution is not unique.
    MatFq solve(const MatFq& b) const;

    // Packed entries, row-major, r bytes per entry (the field's codec).
    const std::vector<uint8_t>& bytes() const { return data_; }

private:
    void check_same(const MatFq& o) const;
    Ctx ctx_;
    size_t rows_ = 0, cols_ = 0;
    std::vector<uint8_t> data_;
};

}  // namespace thd
