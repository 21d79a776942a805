#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "charp/gf_linalg.hpp"
#include "charp/multi_index.hpp"
#include "charp/prime_field.hpp"
#include "charp/report.hpp"

namespace charp {

constexpr std::uint64_t kDefaultEnumerationBound = std::uint64_t{1} << 20;

/// A subspace of a finite-dimensional algebra, held as a canonical RREF basis.
/// Whether it is an ideal / derivation-stable is recomputable against the
/// owning algebra.
class DiffAlgebra;
class SubspaceIdeal {
public:
    explicit SubspaceIdeal(const FpMat& span_rows) : basis_(span_rows.row_basis()) {}

    const FpMat& basis() const { return basis_; }
    std::size_t dim() const { return basis_.rows(); }

    bool contains(const Vec& v) const { return in_row_space(basis_, v); }
    bool contains(const SubspaceIdeal& other) const {
        return subspace_contains(basis_, other.basis_);
    }

    bool is_ideal(const DiffAlgebra& algebra) const;
    bool is_derivation_stable(const DiffAlgebra& algebra) const;
    bool is_differential_ideal(const DiffAlgebra& algebra) const;

    friend bool operator==(const SubspaceIdeal& a, const SubspaceIdeal& b) {
        return a.basis_ == b.basis_;
    }
    friend std::strong_ordering operator<=>(const SubspaceIdeal& a, const SubspaceIdeal& b) {
        if (auto c = a.dim() <=> b.dim(); c != 0) return c;
        return a.basis_ <=> b.basis_;
    }

private:
    FpMat basis_;
};

/// Classification flags of an ideal via its quotient. The quasi flags are
/// reported only for differential ideals; for other ideals they are absent
/// (the underlying notions presuppose a differential quotient).
struct IdealClassification {
    bool proper = false;
    bool is_primary = false;
    bool is_prime = false;
    bool is_maximal = false;
    std::optional<bool> is_quasiradical;
    std::optional<bool> is_quasiprime;
    std::optional<bool> is_quasimaximal;
};

struct AlgebraQuotient;

/// A commutative associative unitary F_p-algebra of finite dimension with
/// finitely many commuting derivations, given by structure constants and
/// derivation matrices. The unit is solved for at construction; all axioms
/// are checked by validate().
class DiffAlgebra {
public:
    DiffAlgebra(const PrimeField& field, std::vector<std::string> basis_names,
                std::vector<std::vector<Vec>> mul_table, std::vector<FpMat> derivations);

    const PrimeField& field() const { return field_; }
    std::size_t dim() const { return dim_; }
    std::size_t num_derivations() const { return m_; }
    const std::vector<std::string>& basis_names() const { return basis_names_; }
    const Vec& unit() const { return unit_; }
    const Vec& table(std::size_t i, std::size_t j) const { return mul_table_[i][j]; }
    const FpMat& derivation(std::size_t t) const { return derivations_[t - 1]; }

    /// Checks commutativity, associativity, the unit law, Leibniz on basis
    /// pairs, and commutation of the derivation matrices. Violations are
    /// report entries with witnessing basis indices, not exceptions.
    Report validate() const;

    Vec basis_vector(std::size_t i) const;
    Vec scalar(std::int64_t c) const;
    Vec mul(const Vec& x, const Vec& y) const;
    Vec pow(const Vec& x, std::uint64_t e) const;
    Vec derive(const Vec& x, std::size_t t) const;
    Vec apply_index(const Vec& x, const MultiIndex& theta) const;

    /// x is nilpotent iff x^dim = 0 (multiplication by x is a nilpotent
    /// operator of a dim-dimensional space).
    bool is_nilpotent(const Vec& x) const;
    /// Every iterated derivative of x is nilpotent. Derivatives are collected
    /// until their span stabilizes; past that point new derivatives stay in
    /// the span, and a span of nilpotents consists of nilpotents.
    bool is_diff_nilpotent(const Vec& x) const;

    SubspaceIdeal zero_ideal() const;
    SubspaceIdeal whole_ideal() const;
    SubspaceIdeal span(const std::vector<Vec>& vectors) const;

    SubspaceIdeal ideal_closure(const SubspaceIdeal& s) const;
    SubspaceIdeal differential_closure(const SubspaceIdeal& s) const;

    /// Span of all nilpotent elements (an ideal), by exhaustive scan.
    SubspaceIdeal nilradical(std::uint64_t bound = kDefaultEnumerationBound) const;

    /// Radical: preimage of the nilradical of the quotient ring.
    SubspaceIdeal radical(const SubspaceIdeal& a,
                          std::uint64_t bound = kDefaultEnumerationBound) const;

    /// Largest differential ideal contained in the ideal t: the stabilized
    /// decreasing iteration t_{k+1} = {x in t_k : all derivatives stay}.
    /// The fixed point is asserted to be a differential ideal.
    SubspaceIdeal differential_core(const SubspaceIdeal& t) const;

    /// Least quasiradical ideal containing the differential ideal a, computed
    /// as the differential nilpotents modulo a and cross-checked against
    /// differential_core(radical(a)).
    SubspaceIdeal quasiradical(const SubspaceIdeal& a,
                               std::uint64_t bound = kDefaultEnumerationBound) const;

    IdealClassification classify(const SubspaceIdeal& q,
                                 std::uint64_t bound = kDefaultEnumerationBound) const;

    /// All derivation-stable ideals (resp. all ideals), canonically ordered by
    /// dimension then basis.
    std::vector<SubspaceIdeal> differential_ideals(
        std::uint64_t bound = kDefaultEnumerationBound) const;
    std::vector<SubspaceIdeal> ring_ideals(std::uint64_t bound = kDefaultEnumerationBound) const;

    bool is_simple(std::uint64_t bound = kDefaultEnumerationBound) const;

    /// For a simple algebra: the maximal ideal {x : x^p = 0}, verified to be
    /// the unique maximal ring ideal with a field quotient.
    struct SimplicityInfo {
        bool simple = false;
        std::optional<SubspaceIdeal> maximal_ideal;
        Report verification;
    };
    SimplicityInfo simplicity_info(std::uint64_t bound = kDefaultEnumerationBound) const;

    /// Quotient by a proper differential ideal, with the coordinate maps:
    /// project(x) = x * to_coords, and lift rows are coset representatives.
    AlgebraQuotient quotient(const SubspaceIdeal& a) const;
    /// Quotient as a plain ring (derivations dropped); works for any proper
    /// ideal and backs the primary/prime/maximal scans.
    AlgebraQuotient quotient_ring(const SubspaceIdeal& a) const;

    static DiffAlgebra direct_product(const DiffAlgebra& a, const DiffAlgebra& b);

    /// Line-oriented text format:
    ///   p=<prime> dim=<d> m=<m>
    ///   basis <name_1> ... <name_d>
    ///   mul <i> <j> = <d residues>     (one line per unordered pair, 1-based)
    ///   D<t> <i> = <d residues>        (one line per derivation and basis)
    /// Incomplete or duplicated tables are rejected. Lines starting with '#'
    /// are comments.
    static DiffAlgebra parse_file(std::string_view text);
    std::string format_file() const;

private:
    AlgebraQuotient quotient_impl(const SubspaceIdeal& a, bool keep_derivations) const;

    PrimeField field_;
    std::size_t dim_;
    std::size_t m_;
    std::vector<std::string> basis_names_;
    Vec unit_;
    std::vector<std::vector<Vec>> mul_table_;
    std::vector<FpMat> derivations_;
};

struct AlgebraQuotient {
    DiffAlgebra algebra;
    FpMat to_coords;  // dim x dim', project along the ideal
    FpMat lift;       // dim' x dim, section of the projection
};

}  // namespace charp
