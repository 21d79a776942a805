#include "doctest.h"

#include "charp/spectra.hpp"
#include "test_support.hpp"

using namespace charp;
using namespace charp::test;

TEST_CASE("spectra of the fixtures") {
    DiffAlgebra b2 = make_b2();
    IdealLattice spec = build_prime_spectrum(b2);
    REQUIRE(spec.size() == 1);
    CHECK(spec.points[0] == b2.span({Vec{0, 1}}));
    IdealLattice qspec = build_quasiprime_spectrum(b2);
    REQUIRE(qspec.size() == 1);
    CHECK(qspec.points[0].dim() == 0);

    DiffAlgebra f3 = make_f3();
    CHECK(build_prime_spectrum(f3).size() == 1);
    CHECK(build_quasiprime_spectrum(f3).size() == 1);

    DiffAlgebra prod = make_b2xb2();
    CHECK(build_prime_spectrum(prod).size() == 2);
    CHECK(build_quasiprime_spectrum(prod).size() == 2);
}

TEST_CASE("closed sets with the cross-checked routes") {
    DiffAlgebra prod = make_b2xb2();
    IdealLattice qspec = build_quasiprime_spectrum(prod);

    auto all = closed_set(prod, qspec, {Vec(4, 0)});
    CHECK(all.size() == qspec.size());
    CHECK(closed_set(prod, qspec, {prod.unit()}).empty());

    // (eps, 0) generates the first factor as a differential ideal; only that
    // factor contains it.
    auto v = closed_set(prod, qspec, {Vec{0, 1, 0, 0}});
    REQUIRE(v.size() == 1);
    CHECK(qspec.points[v[0]] == prod.span({Vec{1, 0, 0, 0}, Vec{0, 1, 0, 0}}));
}

TEST_CASE("topology axioms hold exhaustively on the fixtures") {
    for (const DiffAlgebra& a :
         {make_b2(), make_dual_zero(), make_b2xb2(), make_hf2_t4(), make_hf3_t3(), make_f3()}) {
        IdealLattice qspec = build_quasiprime_spectrum(a);
        Report report = verify_topology_axioms(a, qspec);
        CAPTURE(a.format_file());
        for (const auto& e : report.entries) {
            CAPTURE(e.name);
            CAPTURE(e.witness);
            CHECK(e.status == "PASS");
        }
    }
}

TEST_CASE("the spectrum correspondence is a homeomorphism on the fixtures") {
    for (const DiffAlgebra& a :
         {make_b2(), make_dual_zero(), make_b2xb2(), make_hf2_t4(), make_hf3_t3(), make_f3()}) {
        Report report = check_spectrum_correspondence(a);
        CAPTURE(a.format_file());
        for (const auto& e : report.entries) {
            CAPTURE(e.name);
            CAPTURE(e.witness);
            CHECK(e.status == "PASS");
        }
    }
}

TEST_CASE("good principal opens decompose the principal open") {
    DiffAlgebra b2 = make_b2();
    IdealLattice qspec = build_quasiprime_spectrum(b2);
    CHECK(good_open_decomposition(b2, qspec, Vec{0, 1}).passed());
    CHECK(good_open_decomposition(b2, qspec, b2.unit()).passed());
    CHECK(good_open_decomposition(b2, qspec, Vec{0, 0}).passed());

    for (const DiffAlgebra& a : {make_b2(), make_dual_zero(), make_b2xb2(), make_hf2_t4()}) {
        IdealLattice lattice = build_quasiprime_spectrum(a);
        for (const Vec& f : enumerate_vectors(a.field(), a.dim(), 1 << 12)) {
            CAPTURE(a.format_file());
            REQUIRE(good_open_decomposition(a, lattice, f).passed());
        }
    }
}

TEST_CASE("density of a good open matches regularity in the reduced ring") {
    DiffAlgebra prod = make_b2xb2();
    IdealLattice qspec = build_quasiprime_spectrum(prod);

    DensityResult mixed = good_open_density(prod, qspec, Vec{1, 0, 0, 1});  // (1, eps)
    CHECK_FALSE(mixed.dense);
    CHECK_FALSE(mixed.regular_in_reduced);
    CHECK(mixed.report.passed());

    CHECK(good_open_density(prod, qspec, prod.unit()).dense);
    DensityResult nil = good_open_density(prod, qspec, Vec{0, 1, 0, 0});
    CHECK_FALSE(nil.dense);
    CHECK(nil.report.passed());

    for (const DiffAlgebra& a : {make_b2(), make_dual_zero(), make_b2xb2(), make_hf3_t3()}) {
        IdealLattice lattice = build_quasiprime_spectrum(a);
        for (const Vec& f : enumerate_vectors(a.field(), a.dim(), 1 << 12)) {
            REQUIRE(good_open_density(a, lattice, f).report.passed());
        }
    }
}

TEST_CASE("lattice dumps are stable") {
    DiffAlgebra prod = make_b2xb2();
    IdealLattice qspec = build_quasiprime_spectrum(prod);
    auto lines = qspec.dump();
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "POINT 0 dim=2 basis=[0 0 1 0|0 0 0 1]");
    CHECK(lines[1] == "POINT 1 dim=2 basis=[1 0 0 0|0 1 0 0]");
}
