#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "charp/findim.hpp"
#include "charp/report.hpp"

namespace charp {

enum class SpectrumKind { prime, quasiprime };

/// A finite spectrum: its points (prime or quasiprime ideals in canonical
/// order) together with the containment order, which determines the topology.
struct IdealLattice {
    SpectrumKind kind = SpectrumKind::prime;
    std::vector<SubspaceIdeal> points;
    std::vector<std::vector<bool>> leq;  // leq[i][j]: points[i] contained in points[j]

    std::size_t size() const { return points.size(); }
    /// Lattice dump: one "POINT <id> dim=<k> basis=[..]" line per point plus
    /// "LE <i> <j>" containment edges (i != j).
    std::vector<std::string> dump() const;
};

IdealLattice build_prime_spectrum(const DiffAlgebra& algebra,
                                  std::uint64_t bound = kDefaultEnumerationBound);
IdealLattice build_quasiprime_spectrum(const DiffAlgebra& algebra,
                                       std::uint64_t bound = kDefaultEnumerationBound);

/// Indices of the points containing every generator. On a quasiprime lattice
/// the same set is recomputed through the differential closure and through its
/// quasiradical; the three routes must agree.
std::vector<std::size_t> closed_set(const DiffAlgebra& algebra, const IdealLattice& lattice,
                                    const std::vector<Vec>& generators,
                                    std::uint64_t bound = kDefaultEnumerationBound);

/// Closed-set axioms of the quasispectrum, checked exhaustively over all
/// (pairs of) differential ideals:
///   (1) V(E) = V([E]) = V(quasiradical([E]))
///   (2) V(0) = X, V(1) = {}
///   (3) V(E1 u E2) = V(E1) n V(E2)
///   (4) V(a n b) = V(ab) = V(a) u V(b)
Report verify_topology_axioms(const DiffAlgebra& algebra, const IdealLattice& lattice,
                              std::uint64_t bound = kDefaultEnumerationBound);

/// The radical / largest-differential-ideal maps restrict to mutually inverse
/// containment-preserving bijections between prime and quasiprime (and maximal
/// and quasimaximal) points; on finite posets that certifies a homeomorphism.
/// Also checks the bijection on all radical vs. quasiradical ideals.
Report check_spectrum_correspondence(const DiffAlgebra& algebra,
                                     std::uint64_t bound = kDefaultEnumerationBound);

/// The principal open of f decomposes as the union over derivative words g of
/// the "good" principal opens of g^p; derivative words are collected until the
/// generated ideal chain stabilizes.
Report good_open_decomposition(const DiffAlgebra& algebra, const IdealLattice& quasi,
                               const Vec& f, std::uint64_t bound = kDefaultEnumerationBound);

struct DensityResult {
    bool dense;                   // the good open of f is dense in the lattice
    bool regular_in_reduced;      // f is not a zero divisor modulo the nilradical
    Report report;                // the asserted equivalence of the two
};
DensityResult good_open_density(const DiffAlgebra& algebra, const IdealLattice& quasi,
                                const Vec& f, std::uint64_t bound = kDefaultEnumerationBound);

}  // namespace charp
