#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "charp/diff_polynomial.hpp"
#include "charp/gf_linalg.hpp"
#include "charp/hurwitz.hpp"
#include "charp/report.hpp"

namespace charp {

constexpr std::uint64_t kDefaultSearchBound = std::uint64_t{1} << 22;
constexpr std::uint64_t kDefaultColumnBound = 20000;

/// A point of the truncated affine space: one series per indeterminate, all
/// of the same shape and precision.
struct HurwitzPoint {
    std::vector<HurwitzSeries> coords;

    std::uint32_t precision() const { return coords.empty() ? 0 : coords[0].precision(); }
    /// Flattened coefficient table in coordinate-then-index order; points are
    /// sorted by this key.
    Vec key() const;
    std::string to_string() const;  // "( <coeffs> ; <coeffs> )"
};

enum class SolveStrategy {
    automatic,   // linear solver when every polynomial has degree <= 1
    exhaustive,  // enumerate the whole coefficient space
    linear,      // require the linear fast path
};

struct SolutionSet {
    std::vector<DiffPolynomial> system;
    std::uint32_t precision = 0;
    std::vector<HurwitzPoint> points;  // complete for the domain, lex sorted
    std::string search_domain;
    SolveStrategy used = SolveStrategy::exhaustive;
};

/// All common zeros of the system among points supported on indices of order
/// <= precision. Every polynomial is tested at its own evaluation precision.
/// Affine-linear systems are solved by linear algebra over the coefficient
/// unknowns; anything else is exhausted over the search space.
SolutionSet solve_system(const PrimeField& field, std::uint32_t n, std::uint32_t m,
                         const std::vector<DiffPolynomial>& system, std::uint32_t precision,
                         std::uint64_t bound = kDefaultSearchBound,
                         SolveStrategy strategy = SolveStrategy::automatic);

/// The space of polynomials of order <= r and degree <= e vanishing on every
/// point of X at the shared evaluation precision, as the null space of the
/// evaluation matrix (evaluation is linear in the coefficients).
struct PolySpaceBasis {
    PrimeField field;
    std::uint32_t n = 0, m = 0;
    std::vector<DiffMonomial> monomials;  // column labels, canonical order
    FpMat coefficients;                   // RREF rows spanning the space

    std::vector<DiffPolynomial> polynomials() const;
    bool contains(const DiffPolynomial& f) const;  // f must fit the bounds
};
PolySpaceBasis vanishing_ideal(const PrimeField& field, std::uint32_t n, std::uint32_t m,
                               std::uint32_t precision, const std::vector<HurwitzPoint>& points,
                               std::uint32_t order_bound, std::uint32_t degree_bound,
                               std::uint64_t column_bound = kDefaultColumnBound);

/// The ideal of a single point.
PolySpaceBasis point_ideal(const HurwitzPoint& point, std::uint32_t order_bound,
                           std::uint32_t degree_bound,
                           std::uint64_t column_bound = kDefaultColumnBound);

/// Certifies the one-sided containment: every generator, every derivative
/// word of a generator inside the (order, degree) window, and every product
/// with a window monomial vanishes on the computed zero set. The reverse
/// containment is intentionally reported as UNVERIFIED: it needs an
/// uncountable algebraically closed residue field and has no finite shadow.
Report check_vanishing_inclusion(const PrimeField& field, std::uint32_t n, std::uint32_t m,
                                 const std::vector<DiffPolynomial>& generators,
                                 std::uint32_t precision, std::uint32_t order_bound,
                                 std::uint32_t degree_bound,
                                 std::uint64_t bound = kDefaultSearchBound);

/// A polynomial map between truncated affine spaces.
struct RegularMap {
    std::uint32_t source_vars = 0;
    std::uint32_t target_vars = 0;
    std::vector<DiffPolynomial> components;  // over the source ring

    static RegularMap make(std::uint32_t source_vars, std::vector<DiffPolynomial> components);
};

HurwitzPoint apply_map(const RegularMap& map, const HurwitzPoint& x);
/// phi^*(g) = g of the components: substitutes each derivative variable of the
/// target ring by the matching derivative of the component polynomial. A
/// differential ring homomorphism.
DiffPolynomial pullback(const RegularMap& map, const DiffPolynomial& g);
/// Composite x -> then(first(x)); components are pullbacks of then through first.
RegularMap compose(const RegularMap& first, const RegularMap& then);

/// Growth function of the coordinate ring filtered by derivative order, for
/// ideals generated by derivative variables and closed under derivation: the
/// t-th value counts the surviving variables of order <= t. The killed set
/// must be derivative-closed inside the window (or NotDerivativeClosedError).
std::vector<std::uint32_t> dimension_profile(const std::vector<DerivVar>& killed,
                                             std::uint32_t n, std::uint32_t m,
                                             std::uint32_t t_max);

/// Upward closure of generator variables under derivation, cut at order t_max.
std::vector<DerivVar> derivative_closure_vars(const std::vector<DerivVar>& generators,
                                              std::uint32_t n, std::uint32_t m,
                                              std::uint32_t t_max);

/// Profile of the filtration induced by an arbitrary family of derivative-
/// variable generators: value at t is the number of distinct variables
/// theta_j + theta with ord(theta) <= t. Lets two presentations of the same
/// ring be compared up to a shift.
std::vector<std::uint32_t> dimension_profile_for_generators(
    const std::vector<DerivVar>& generators, std::uint32_t m, std::uint32_t t_max);

/// Text form of a polynomial system: header "p=<p> m=<m> n=<n> N=<N>", then
/// one polynomial per line in the expression grammar. '#' lines are comments.
struct DiffSystem {
    PrimeField field;
    std::uint32_t n = 0, m = 0;
    std::uint32_t precision = 0;
    std::vector<DiffPolynomial> polynomials;
};
DiffSystem parse_system_file(std::string_view text);

}  // namespace charp
