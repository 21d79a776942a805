#pragma once

#include <cstdint>
#include <vector>

#include "charp/findim.hpp"
#include "charp/hurwitz.hpp"
#include "charp/report.hpp"

namespace charp {

/// A unital multiplicative F_p-linear map from a finite-dimensional algebra
/// to its scalar field, given by the images of the basis elements. Both laws
/// are checked at construction.
class ScalarRingMap {
public:
    ScalarRingMap(const DiffAlgebra& algebra, Vec values);

    const Vec& values() const { return values_; }
    Fp apply(const Vec& x) const;

private:
    PrimeField field_;
    Vec values_;
};

/// The quotient map of a quasifield by its maximal ideal {x : x^p = 0},
/// normalized so the unit maps to 1. Requires a simple algebra whose residue
/// field is the prime field itself.
ScalarRingMap residue_map(const DiffAlgebra& algebra,
                          std::uint64_t bound = kDefaultEnumerationBound);

/// The differential-ring map into truncated Hurwitz series determined by a
/// scalar ring map: the coefficient of the image of b at the index k is the
/// scalar image of the k-th derivative of b.
class TaylorExpansion {
public:
    TaylorExpansion(const DiffAlgebra& algebra, const ScalarRingMap& phi, std::uint32_t precision);

    std::uint32_t precision() const { return precision_; }
    const HurwitzSeries& image_of_basis(std::size_t i) const { return images_[i]; }
    HurwitzSeries apply(const Vec& x) const;

private:
    PrimeField field_;
    std::size_t m_;
    std::uint32_t precision_;
    std::vector<HurwitzSeries> images_;
};

/// Verifies the defining diagram of the expansion at precision N:
///   (i)   free term of the image recovers the scalar map,
///   (ii)  the map is additive and multiplicative on basis pairs,
///   (iii) it intertwines the derivations (at precision N-1),
///   (iv)  the coefficient formula itself is re-derived from the diagram:
///         reading coefficient k off the image via shift derivations equals
///         the scalar image of the k-th derivative, which forces uniqueness.
Report check_universal(const DiffAlgebra& algebra, const ScalarRingMap& phi,
                       std::uint32_t precision);

/// Canonical basis of the kernel: vectors all of whose derivative words map
/// to zero under the scalar map (orders up to the given precision).
FpMat taylor_kernel(const DiffAlgebra& algebra, const ScalarRingMap& phi,
                    std::uint32_t precision);

}  // namespace charp
