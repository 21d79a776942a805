#include "charp/spectra.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace charp {

namespace {

std::vector<std::vector<bool>> containment_matrix(const std::vector<SubspaceIdeal>& points) {
    std::vector<std::vector<bool>> leq(points.size(), std::vector<bool>(points.size(), false));
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = 0; j < points.size(); ++j) {
            leq[i][j] = points[j].contains(points[i]);
        }
    }
    return leq;
}

std::string set_to_string(const std::vector<std::size_t>& s) {
    std::ostringstream out;
    out << "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out << ",";
        out << s[i];
    }
    out << "}";
    return out.str();
}

std::vector<std::size_t> points_containing(const IdealLattice& lattice,
                                           const SubspaceIdeal& ideal) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < lattice.points.size(); ++i) {
        if (lattice.points[i].contains(ideal)) out.push_back(i);
    }
    return out;
}

std::vector<std::size_t> set_union(std::vector<std::size_t> a,
                                   const std::vector<std::size_t>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

std::vector<std::size_t> set_intersection(const std::vector<std::size_t>& a,
                                          const std::vector<std::size_t>& b) {
    std::vector<std::size_t> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

/// Ideal generated by all pairwise products of two ideals' basis elements.
SubspaceIdeal product_ideal(const DiffAlgebra& algebra, const SubspaceIdeal& a,
                            const SubspaceIdeal& b) {
    std::vector<Vec> products;
    for (std::size_t i = 0; i < a.basis().rows(); ++i) {
        for (std::size_t j = 0; j < b.basis().rows(); ++j) {
            products.push_back(algebra.mul(a.basis().row(i), b.basis().row(j)));
        }
    }
    return algebra.ideal_closure(algebra.span(products));
}

}  // namespace

std::vector<std::string> IdealLattice::dump() const {
    std::vector<std::string> lines;
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::ostringstream out;
        out << "POINT " << i << " dim=" << points[i].dim() << " basis=["
            << points[i].basis().to_string() << "]";
        lines.push_back(out.str());
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (i != j && leq[i][j]) {
                lines.push_back("LE " + std::to_string(i) + " " + std::to_string(j));
            }
        }
    }
    return lines;
}

IdealLattice build_prime_spectrum(const DiffAlgebra& algebra, std::uint64_t bound) {
    IdealLattice lattice;
    lattice.kind = SpectrumKind::prime;
    for (const SubspaceIdeal& q : algebra.ring_ideals(bound)) {
        if (algebra.classify(q, bound).is_prime) lattice.points.push_back(q);
    }
    lattice.leq = containment_matrix(lattice.points);
    return lattice;
}

IdealLattice build_quasiprime_spectrum(const DiffAlgebra& algebra, std::uint64_t bound) {
    IdealLattice lattice;
    lattice.kind = SpectrumKind::quasiprime;
    for (const SubspaceIdeal& q : algebra.differential_ideals(bound)) {
        IdealClassification c = algebra.classify(q, bound);
        if (c.is_quasiprime.value_or(false)) lattice.points.push_back(q);
    }
    lattice.leq = containment_matrix(lattice.points);
    return lattice;
}

std::vector<std::size_t> closed_set(const DiffAlgebra& algebra, const IdealLattice& lattice,
                                    const std::vector<Vec>& generators, std::uint64_t bound) {
    std::vector<std::size_t> direct;
    for (std::size_t i = 0; i < lattice.points.size(); ++i) {
        bool all = true;
        for (const Vec& g : generators) {
            if (!lattice.points[i].contains(g)) {
                all = false;
                break;
            }
        }
        if (all) direct.push_back(i);
    }
    if (lattice.kind == SpectrumKind::quasiprime) {
        SubspaceIdeal closure = algebra.differential_closure(algebra.span(generators));
        std::vector<std::size_t> via_closure = points_containing(lattice, closure);
        std::vector<std::size_t> via_quasiradical =
            points_containing(lattice, algebra.quasiradical(closure, bound));
        if (direct != via_closure || direct != via_quasiradical) {
            throw CrossCheckError("closed set disagrees across generators / closure / quasiradical");
        }
    }
    return direct;
}

Report verify_topology_axioms(const DiffAlgebra& algebra, const IdealLattice& lattice,
                              std::uint64_t bound) {
    Report report;
    std::vector<SubspaceIdeal> ideals = algebra.differential_ideals(bound);

    std::vector<std::size_t> all_points(lattice.points.size());
    for (std::size_t i = 0; i < all_points.size(); ++i) all_points[i] = i;

    // (1) V(E) = V([E]) = V(rad [E]) for the generators of every differential ideal.
    bool ok1 = true;
    std::string w1;
    for (const SubspaceIdeal& a : ideals) {
        std::vector<Vec> gens;
        for (std::size_t r = 0; r < a.basis().rows(); ++r) gens.push_back(a.basis().row(r));
        std::vector<std::size_t> ve = closed_set(algebra, lattice, gens, bound);
        std::vector<std::size_t> va = points_containing(lattice, a);
        std::vector<std::size_t> vrad = points_containing(lattice, algebra.quasiradical(a, bound));
        if (ve != va || ve != vrad) {
            ok1 = false;
            w1 = "ideal [" + a.basis().to_string() + "]";
            break;
        }
    }
    report.check("topology.generators_closure_radical", ok1, w1);

    // (2) V(0) is everything, V(1) is empty.
    std::vector<std::size_t> v0 = closed_set(algebra, lattice, {Vec(algebra.dim(), 0)}, bound);
    report.check("topology.vanishing_of_zero", v0 == all_points, set_to_string(v0));
    std::vector<std::size_t> v1 = closed_set(algebra, lattice, {algebra.unit()}, bound);
    report.check("topology.vanishing_of_one", v1.empty(), set_to_string(v1));

    // (3) V of a union of generator sets is the intersection of the V's.
    bool ok3 = true;
    std::string w3;
    for (const SubspaceIdeal& a : ideals) {
        for (const SubspaceIdeal& b : ideals) {
            std::vector<Vec> gens;
            for (std::size_t r = 0; r < a.basis().rows(); ++r) gens.push_back(a.basis().row(r));
            for (std::size_t r = 0; r < b.basis().rows(); ++r) gens.push_back(b.basis().row(r));
            std::vector<std::size_t> joint = closed_set(algebra, lattice, gens, bound);
            std::vector<std::size_t> both = set_intersection(points_containing(lattice, a),
                                                             points_containing(lattice, b));
            if (joint != both) {
                ok3 = false;
                w3 = "[" + a.basis().to_string() + "] u [" + b.basis().to_string() + "]";
                break;
            }
        }
        if (!ok3) break;
    }
    report.check("topology.union_to_intersection", ok3, w3);

    // (4) V(a n b) = V(ab) = V(a) u V(b) over pairs of differential ideals.
    bool ok4 = true;
    std::string w4;
    for (const SubspaceIdeal& a : ideals) {
        for (const SubspaceIdeal& b : ideals) {
            SubspaceIdeal meet(subspace_intersection(a.basis(), b.basis()));
            SubspaceIdeal prod = product_ideal(algebra, a, b);
            std::vector<std::size_t> v_meet = points_containing(lattice, meet);
            std::vector<std::size_t> v_prod = points_containing(lattice, prod);
            std::vector<std::size_t> v_union = set_union(points_containing(lattice, a),
                                                         points_containing(lattice, b));
            if (v_meet != v_prod || v_meet != v_union) {
                ok4 = false;
                w4 = "[" + a.basis().to_string() + "] , [" + b.basis().to_string() + "]";
                break;
            }
        }
        if (!ok4) break;
    }
    report.check("topology.intersection_product_union", ok4, w4);

    return report;
}

Report check_spectrum_correspondence(const DiffAlgebra& algebra, std::uint64_t bound) {
    Report report;

    // Radical ideals and quasiradical differential ideals.
    std::vector<SubspaceIdeal> radical_ideals;
    for (const SubspaceIdeal& a : algebra.ring_ideals(bound)) {
        if (algebra.radical(a, bound) == a) radical_ideals.push_back(a);
    }
    std::vector<SubspaceIdeal> quasiradical_ideals;
    for (const SubspaceIdeal& a : algebra.differential_ideals(bound)) {
        if (algebra.quasiradical(a, bound) == a) quasiradical_ideals.push_back(a);
    }

    bool ok = true;
    std::string witness;
    for (const SubspaceIdeal& t : radical_ideals) {
        SubspaceIdeal down = algebra.differential_core(t);
        if (!(algebra.radical(down, bound) == t)) {
            ok = false;
            witness = "radical ideal [" + t.basis().to_string() + "]";
            break;
        }
        if (std::find(quasiradical_ideals.begin(), quasiradical_ideals.end(), down) ==
            quasiradical_ideals.end()) {
            ok = false;
            witness = "image not quasiradical: [" + down.basis().to_string() + "]";
            break;
        }
    }
    report.check("correspondence.radical_roundtrip", ok, witness);

    ok = true;
    witness.clear();
    for (const SubspaceIdeal& u : quasiradical_ideals) {
        SubspaceIdeal up = algebra.radical(u, bound);
        if (!(algebra.differential_core(up) == u)) {
            ok = false;
            witness = "quasiradical ideal [" + u.basis().to_string() + "]";
            break;
        }
        if (std::find(radical_ideals.begin(), radical_ideals.end(), up) == radical_ideals.end()) {
            ok = false;
            witness = "image not radical: [" + up.basis().to_string() + "]";
            break;
        }
    }
    report.check("correspondence.quasiradical_roundtrip", ok, witness);

    // Monotonicity of both maps (order isomorphism = homeomorphism of the
    // finite spectral topologies).
    ok = true;
    witness.clear();
    for (const SubspaceIdeal& s : radical_ideals) {
        for (const SubspaceIdeal& t : radical_ideals) {
            bool before = t.contains(s);
            bool after = algebra.differential_core(t).contains(algebra.differential_core(s));
            if (before && !after) {
                ok = false;
                witness = "[" + s.basis().to_string() + "] <= [" + t.basis().to_string() + "]";
                break;
            }
        }
        if (!ok) break;
    }
    report.check("correspondence.core_monotone", ok, witness);

    ok = true;
    witness.clear();
    for (const SubspaceIdeal& s : quasiradical_ideals) {
        for (const SubspaceIdeal& t : quasiradical_ideals) {
            bool before = t.contains(s);
            bool after = algebra.radical(t, bound).contains(algebra.radical(s, bound));
            if (before && !after) {
                ok = false;
                witness = "[" + s.basis().to_string() + "] <= [" + t.basis().to_string() + "]";
                break;
            }
        }
        if (!ok) break;
    }
    report.check("correspondence.radical_monotone", ok, witness);

    // Spec <-> QSpec and Max <-> QMax restrictions.
    IdealLattice spec = build_prime_spectrum(algebra, bound);
    IdealLattice qspec = build_quasiprime_spectrum(algebra, bound);
    report.check("correspondence.point_counts", spec.size() == qspec.size(),
                 std::to_string(spec.size()) + " vs " + std::to_string(qspec.size()));

    ok = true;
    witness.clear();
    std::vector<std::size_t> image_of(spec.size());
    for (std::size_t i = 0; i < spec.size(); ++i) {
        SubspaceIdeal down = algebra.differential_core(spec.points[i]);
        auto it = std::find(qspec.points.begin(), qspec.points.end(), down);
        if (it == qspec.points.end()) {
            ok = false;
            witness = "POINT " + std::to_string(i) + " maps outside the quasispectrum";
            break;
        }
        image_of[i] = static_cast<std::size_t>(it - qspec.points.begin());
        if (!(algebra.radical(down, bound) == spec.points[i])) {
            ok = false;
            witness = "POINT " + std::to_string(i) + " does not return along the radical";
            break;
        }
    }
    if (ok) {
        std::vector<std::size_t> sorted = image_of;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            if (sorted[i] != i) {
                ok = false;
                witness = "prime-to-quasiprime map is not a bijection";
                break;
            }
        }
    }
    report.check("correspondence.spectrum_bijection", ok, witness);

    // Maximal points pair with quasimaximal points.
    ok = true;
    witness.clear();
    for (std::size_t i = 0; i < spec.size() && ok; ++i) {
        bool max_side = algebra.classify(spec.points[i], bound).is_maximal;
        bool qmax_side =
            algebra.classify(qspec.points[image_of[i]], bound).is_quasimaximal.value_or(false);
        if (max_side != qmax_side) {
            ok = false;
            witness = "POINT " + std::to_string(i);
        }
    }
    report.check("correspondence.maximal_pairing", ok, witness);

    return report;
}

Report good_open_decomposition(const DiffAlgebra& algebra, const IdealLattice& quasi,
                               const Vec& f, std::uint64_t bound) {
    Report report;
    const std::uint32_t p = algebra.field().modulus();

    SubspaceIdeal closure = algebra.differential_closure(algebra.span({f}));
    std::vector<std::size_t> v_closure = points_containing(quasi, closure);
    std::vector<std::size_t> principal_open;
    for (std::size_t i = 0; i < quasi.size(); ++i) {
        if (std::find(v_closure.begin(), v_closure.end(), i) == v_closure.end()) {
            principal_open.push_back(i);
        }
    }

    // Derivative words of f, collected until the generated ideal chain stops
    // growing; the union of the good opens of their p-th powers.
    std::vector<Vec> words{f};
    SubspaceIdeal chain = algebra.ideal_closure(algebra.span({f}));
    std::vector<Vec> frontier{f};
    while (!frontier.empty()) {
        std::vector<Vec> next;
        for (const Vec& v : frontier) {
            for (std::size_t t = 1; t <= algebra.num_derivations(); ++t) {
                next.push_back(algebra.derive(v, t));
            }
        }
        std::vector<Vec> all = words;
        all.insert(all.end(), next.begin(), next.end());
        SubspaceIdeal grown = algebra.ideal_closure(algebra.span(all));
        if (grown == chain) break;
        chain = grown;
        words = all;
        frontier = std::move(next);
    }

    std::vector<std::size_t> union_side;
    for (const Vec& w : words) {
        Vec wp = algebra.pow(w, p);
        for (std::size_t i = 0; i < quasi.size(); ++i) {
            if (!quasi.points[i].contains(wp)) union_side.push_back(i);
        }
    }
    std::sort(union_side.begin(), union_side.end());
    union_side.erase(std::unique(union_side.begin(), union_side.end()), union_side.end());

    report.check("good_open.decomposition", principal_open == union_side,
                 set_to_string(principal_open) + " vs " + set_to_string(union_side));
    (void)bound;
    return report;
}

DensityResult good_open_density(const DiffAlgebra& algebra, const IdealLattice& quasi,
                                const Vec& f, std::uint64_t bound) {
    DensityResult result{};
    const std::uint32_t p = algebra.field().modulus();

    Vec fp = algebra.pow(f, p);
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < quasi.size(); ++i) {
        if (!quasi.points[i].contains(fp)) open.push_back(i);
    }
    // Closure of a point set: everything specializing to it, i.e. all points
    // containing some point of the set.
    std::vector<bool> closed(quasi.size(), false);
    for (std::size_t i : open) {
        for (std::size_t j = 0; j < quasi.size(); ++j) {
            if (quasi.leq[i][j]) closed[j] = true;
        }
    }
    result.dense = std::all_of(closed.begin(), closed.end(), [](bool b) { return b; });

    // Ring-level criterion: the image of f in the reduced quotient is not a
    // zero divisor.
    SubspaceIdeal nil = algebra.nilradical(bound);
    if (nil.dim() == algebra.dim()) {
        throw CrossCheckError("nilradical cannot be the whole unital algebra");
    }
    AlgebraQuotient reduced = algebra.quotient_ring(nil);
    const DiffAlgebra& R = reduced.algebra;
    Vec image = reduced.to_coords.apply_row(f);
    FpMat mx(algebra.field(), R.dim(), R.dim());
    for (std::size_t i = 0; i < R.dim(); ++i) {
        Vec row = R.mul(R.basis_vector(i), image);
        for (std::size_t j = 0; j < R.dim(); ++j) mx.set(i, j, row[j]);
    }
    result.regular_in_reduced = mx.rank() == R.dim();

    result.report.check("good_open.density_criterion", result.dense == result.regular_in_reduced,
                        std::string("dense=") + (result.dense ? "true" : "false") +
                            " regular=" + (result.regular_in_reduced ? "true" : "false"));
    return result;
}

}  // namespace charp
