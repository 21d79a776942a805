#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "charp/prime_field.hpp"

namespace charp {

/// A coordinate vector over F_p, raw canonical residues.
using Vec = std::vector<std::uint32_t>;

/// Dense matrix over F_p. Vectors are rows; a subspace is the row space of a
/// basis matrix kept in reduced row-echelon form, which makes bases canonical
/// and comparisons exact.
class FpMat {
public:
    FpMat(const PrimeField& field, std::size_t rows, std::size_t cols);
    FpMat(const PrimeField& field, std::vector<Vec> rows, std::size_t cols);

    static FpMat identity(const PrimeField& field, std::size_t n);
    static FpMat from_row(const PrimeField& field, const Vec& row);

    const PrimeField& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::uint32_t at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, std::uint32_t v) { data_[i * cols_ + j] = v % field_.modulus(); }

    Vec row(std::size_t i) const;
    void append_row(const Vec& row);

    friend FpMat operator*(const FpMat& a, const FpMat& b);
    Vec apply_row(const Vec& x) const;  // x * this, x a row vector of size rows()

    /// In-place reduction to RREF; returns the pivot columns.
    std::vector<std::size_t> reduce();
    /// RREF with zero rows dropped: the canonical basis of the row space.
    FpMat row_basis() const;
    std::size_t rank() const;

    friend bool operator==(const FpMat& a, const FpMat& b);
    friend std::strong_ordering operator<=>(const FpMat& a, const FpMat& b);

    std::string to_string() const;  // rows joined by '|', entries by ' '

private:
    PrimeField field_;
    std::size_t rows_, cols_;
    std::vector<std::uint32_t> data_;
};

Vec vec_add(const PrimeField& field, const Vec& a, const Vec& b);
Vec vec_sub(const PrimeField& field, const Vec& a, const Vec& b);
Vec vec_scale(const PrimeField& field, const Vec& a, std::uint32_t c);
bool vec_is_zero(const Vec& a);

/// Canonical RREF basis of {x : x * m = 0} with x a row vector of size
/// m.rows(): solutions of the homogeneous system whose columns are equations.
FpMat nullspace(const FpMat& m);

/// Solve x * m = b for a row vector x; empty optional when inconsistent.
std::optional<Vec> solve_left(const FpMat& m, const Vec& b);

/// Is v in the row space of basis (basis need not be reduced)?
bool in_row_space(const FpMat& basis, const Vec& v);

/// Reduce v against an RREF basis; the residual is zero iff v lies in the
/// row space.
Vec reduce_against(const FpMat& rref_basis, const std::vector<std::size_t>& pivots, const Vec& v);

FpMat subspace_sum(const FpMat& a, const FpMat& b);
FpMat subspace_intersection(const FpMat& a, const FpMat& b);
bool subspace_contains(const FpMat& outer, const FpMat& inner);

/// Number of subspaces of F_q^d of all dimensions, capped at `cap` (returns
/// cap + 1 when the true count exceeds it).
std::uint64_t count_subspaces(std::uint64_t q, std::size_t d, std::uint64_t cap);

/// All subspaces of F_q^d as canonical RREF bases, ordered by dimension then
/// lexicographically. Throws EnumerationTooLargeError past the bound.
std::vector<FpMat> enumerate_subspaces(const PrimeField& field, std::size_t d,
                                       std::uint64_t bound);

/// All q^d coordinate vectors in lexicographic order (bound-checked).
std::vector<Vec> enumerate_vectors(const PrimeField& field, std::size_t d, std::uint64_t bound);

}  // namespace charp
