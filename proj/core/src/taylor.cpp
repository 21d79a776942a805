#include "charp/taylor.hpp"

#include <string>

namespace charp {

ScalarRingMap::ScalarRingMap(const DiffAlgebra& algebra, Vec values)
    : field_(algebra.field()), values_(std::move(values)) {
    if (values_.size() != algebra.dim()) {
        throw ShapeMismatchError("scalar map needs one value per basis element");
    }
    for (std::uint32_t& v : values_) v %= field_.modulus();
    if (apply(algebra.unit()).value() != 1) {
        throw Error("scalar map is not unital");
    }
    for (std::size_t i = 0; i < algebra.dim(); ++i) {
        for (std::size_t j = i; j < algebra.dim(); ++j) {
            Fp lhs = apply(algebra.table(i, j));
            Fp rhs = Fp(field_, values_[i]) * Fp(field_, values_[j]);
            if (lhs != rhs) {
                throw Error("scalar map is not multiplicative at basis pair (" +
                            std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
            }
        }
    }
}

Fp ScalarRingMap::apply(const Vec& x) const {
    if (x.size() != values_.size()) throw ShapeMismatchError("vector length mismatch");
    std::uint64_t acc = 0;
    const std::uint64_t p = field_.modulus();
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc = (acc + static_cast<std::uint64_t>(x[i]) * values_[i]) % p;
    }
    return Fp(field_, static_cast<std::int64_t>(acc));
}

ScalarRingMap residue_map(const DiffAlgebra& algebra, std::uint64_t bound) {
    if (!algebra.is_simple(bound)) {
        throw NotQuasifieldError("residue map requires a simple differential algebra");
    }
    const std::uint32_t p = algebra.field().modulus();
    std::vector<Vec> members;
    for (const Vec& x : enumerate_vectors(algebra.field(), algebra.dim(), bound)) {
        if (vec_is_zero(algebra.pow(x, p))) members.push_back(x);
    }
    SubspaceIdeal maximal = algebra.span(members);
    if (maximal.dim() + 1 != algebra.dim()) {
        throw ResidueNotPrimeFieldError("residue field has dimension " +
                                        std::to_string(algebra.dim() - maximal.dim()) +
                                        " over the prime field");
    }
    AlgebraQuotient q = algebra.quotient_ring(maximal);
    // One-dimensional quotient: normalize so the unit goes to 1.
    Fp unit_image(algebra.field(), q.to_coords.apply_row(algebra.unit())[0]);
    Fp scale = unit_image.inverse();
    Vec values(algebra.dim());
    for (std::size_t i = 0; i < algebra.dim(); ++i) {
        Fp v(algebra.field(), q.to_coords.apply_row(algebra.basis_vector(i))[0]);
        values[i] = (v * scale).value();
    }
    return ScalarRingMap(algebra, values);
}

TaylorExpansion::TaylorExpansion(const DiffAlgebra& algebra, const ScalarRingMap& phi,
                                 std::uint32_t precision)
    : field_(algebra.field()),
      m_(algebra.num_derivations()),
      precision_(precision),
      images_() {
    // Walk the index window once, reusing the derivative of the predecessor
    // index (any path gives the same vector; the derivations commute).
    std::vector<MultiIndex> window = indices_up_to(m_, precision_);
    for (std::size_t b = 0; b < algebra.dim(); ++b) {
        std::map<MultiIndex, Vec> derivatives;
        HurwitzSeries image(field_, m_, precision_);
        for (const MultiIndex& k : window) {
            Vec value(algebra.dim(), 0);
            if (k.is_zero()) {
                value = algebra.basis_vector(b);
            } else {
                for (std::size_t t = 1; t <= m_; ++t) {
                    if (k[t - 1] == 0) continue;
                    MultiIndex prev = *k.minus(MultiIndex::unit(m_, t));
                    value = algebra.derive(derivatives.at(prev), t);
                    break;
                }
            }
            derivatives.emplace(k, value);
            image.set_coefficient(k, phi.apply(value));
        }
        images_.push_back(std::move(image));
    }
}

HurwitzSeries TaylorExpansion::apply(const Vec& x) const {
    if (x.size() != images_.size()) throw ShapeMismatchError("vector length mismatch");
    HurwitzSeries acc(field_, m_, precision_);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        acc = acc + images_[i].scaled(Fp(field_, x[i]));
    }
    return acc;
}

Report check_universal(const DiffAlgebra& algebra, const ScalarRingMap& phi,
                       std::uint32_t precision) {
    Report report;
    TaylorExpansion taylor(algebra, phi, precision);
    const std::size_t d = algebra.dim();
    const std::size_t m = algebra.num_derivations();

    bool ok = true;
    std::string witness;
    for (std::size_t i = 0; i < d; ++i) {
        if (taylor.image_of_basis(i).free_term() != phi.apply(algebra.basis_vector(i))) {
            ok = false;
            witness = "basis " + std::to_string(i + 1);
            break;
        }
    }
    report.check("universal.free_term", ok, witness);

    ok = true;
    witness.clear();
    for (std::size_t i = 0; i < d && ok; ++i) {
        for (std::size_t j = i; j < d && ok; ++j) {
            Vec sum = vec_add(algebra.field(), algebra.basis_vector(i), algebra.basis_vector(j));
            HurwitzSeries lin = taylor.apply(sum);
            HurwitzSeries sep = taylor.image_of_basis(i) + taylor.image_of_basis(j);
            if (!(lin == sep)) {
                ok = false;
                witness = "additivity at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
                break;
            }
            HurwitzSeries prod_image = taylor.apply(algebra.table(i, j));
            HurwitzSeries image_prod = taylor.image_of_basis(i) * taylor.image_of_basis(j);
            if (!(prod_image == image_prod)) {
                ok = false;
                witness = "multiplicativity at (" + std::to_string(i + 1) + "," +
                          std::to_string(j + 1) + ")";
            }
        }
    }
    report.check("universal.ring_map", ok, witness);

    ok = true;
    witness.clear();
    if (precision > 0) {
        for (std::size_t t = 1; t <= m && ok; ++t) {
            for (std::size_t i = 0; i < d && ok; ++i) {
                HurwitzSeries lhs = taylor.apply(algebra.derive(algebra.basis_vector(i), t));
                HurwitzSeries rhs = taylor.image_of_basis(i).derive(t);
                if (!(lhs.truncated(precision - 1) == rhs)) {
                    ok = false;
                    witness = "D" + std::to_string(t) + " at basis " + std::to_string(i + 1);
                }
            }
        }
    }
    report.check("universal.derivations", ok, witness);

    // Uniqueness: the diagram forces the coefficient formula. Read each
    // coefficient off the image with shift derivations and compare with the
    // scalar image of the matching derivative of the source element.
    ok = true;
    witness.clear();
    for (std::size_t i = 0; i < d && ok; ++i) {
        for (const MultiIndex& k : indices_up_to(m, precision)) {
            Fp via_series = taylor.image_of_basis(i).apply_index(k).free_term();
            Fp via_algebra = phi.apply(algebra.apply_index(algebra.basis_vector(i), k));
            if (via_series != via_algebra) {
                ok = false;
                witness = "basis " + std::to_string(i + 1) + " index order " +
                          std::to_string(k.order());
                break;
            }
        }
    }
    report.check("universal.coefficient_formula", ok, witness);

    return report;
}

FpMat taylor_kernel(const DiffAlgebra& algebra, const ScalarRingMap& phi,
                    std::uint32_t precision) {
    const std::size_t d = algebra.dim();
    std::vector<MultiIndex> window = indices_up_to(algebra.num_derivations(), precision);
    // Rows: basis elements; columns: one linear functional per index.
    FpMat conditions(algebra.field(), d, window.size());
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t c = 0; c < window.size(); ++c) {
            Vec derived = algebra.apply_index(algebra.basis_vector(i), window[c]);
            conditions.set(i, c, phi.apply(derived).value());
        }
    }
    return nullspace(conditions);
}

}  // namespace charp
