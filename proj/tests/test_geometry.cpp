#include "doctest.h"

#include <random>

#include "charp/geometry.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace charp;
using namespace charp::test;

namespace {

DiffPolynomial poly(const std::string& text, const PrimeField& f, std::uint32_t n,
                    std::uint32_t m) {
    return DiffPolynomial::parse(text, f, n, m);
}

}  // namespace

TEST_CASE("zero search on the stated linear systems") {
    PrimeField f2(2);
    auto growth = solve_system(f2, 1, 1, {poly("D[1](y1) - y1", f2, 1, 1)}, 3);
    REQUIRE(growth.points.size() == 2);
    CHECK(growth.points[0].key() == Vec{0, 0, 0, 0});
    CHECK(growth.points[1].key() == Vec{1, 1, 1, 1});
    CHECK(growth.used == SolveStrategy::linear);

    auto affine = solve_system(f2, 1, 1, {poly("D[1](y1) - 1", f2, 1, 1)}, 3);
    REQUIRE(affine.points.size() == 2);
    CHECK(affine.points[0].key() == Vec{0, 1, 0, 0});
    CHECK(affine.points[1].key() == Vec{1, 1, 0, 0});

    CHECK(solve_system(f2, 1, 1, {poly("1", f2, 1, 1)}, 3).points.empty());
}

TEST_CASE("the linear fast path matches exhaustive enumeration") {
    PrimeField f2(2), f3(3);
    struct Case {
        PrimeField field;
        std::uint32_t n;
        std::vector<std::string> polys;
    };
    std::vector<Case> cases = {
        {f2, 1, {"D[1](y1) - y1"}},
        {f2, 1, {"D[1](y1) - 1"}},
        {f2, 1, {"D[1](y1)"}},
        {f2, 2, {"y1 + y2", "D[1](y2) - y2"}},
        {f3, 1, {"D[1](y1) - y1"}},
        {f3, 1, {"2*D[1](y1) - y1 - 1"}},
    };
    for (const auto& c : cases) {
        std::vector<DiffPolynomial> system;
        for (const std::string& s : c.polys) system.push_back(poly(s, c.field, c.n, 1));
        auto fast = solve_system(c.field, c.n, 1, system, 3, kDefaultSearchBound,
                                 SolveStrategy::linear);
        auto slow = solve_system(c.field, c.n, 1, system, 3, kDefaultSearchBound,
                                 SolveStrategy::exhaustive);
        REQUIRE(fast.points.size() == slow.points.size());
        for (std::size_t i = 0; i < fast.points.size(); ++i) {
            CHECK(fast.points[i].key() == slow.points[i].key());
        }
    }
}

TEST_CASE("re-running with a larger bound returns the identical list") {
    PrimeField f2(2);
    std::vector<DiffPolynomial> system{poly("y1^2 - y1", f2, 1, 1)};
    auto small = solve_system(f2, 1, 1, system, 3, 1 << 8);
    auto large = solve_system(f2, 1, 1, system, 3, 1 << 20);
    REQUIRE(small.points.size() == large.points.size());
    for (std::size_t i = 0; i < small.points.size(); ++i) {
        CHECK(small.points[i].key() == large.points[i].key());
    }
}

TEST_CASE("bounds and precision preconditions") {
    PrimeField f2(2);
    CHECK_THROWS_AS(solve_system(f2, 1, 1, {poly("y1", f2, 1, 1)}, 3, 4),
                    SearchSpaceTooLargeError);
    CHECK_THROWS_AS(solve_system(f2, 1, 1, {poly("D[3](y1)", f2, 1, 1)}, 2),
                    PrecisionExhaustedError);
    CHECK_THROWS_AS(solve_system(f2, 1, 1, {poly("y1^2", f2, 1, 1)}, 3, kDefaultSearchBound,
                                 SolveStrategy::linear),
                    ShapeMismatchError);
}

TEST_CASE("vanishing ideals of small point sets") {
    PrimeField f2(2);

    HurwitzPoint zero{{HurwitzSeries(f2, 1, 3)}};
    PolySpaceBasis at_zero = point_ideal(zero, 0, 1);
    auto polys = at_zero.polynomials();
    REQUIRE(polys.size() == 1);
    CHECK(polys[0] == poly("y1", f2, 1, 1));

    auto growth = solve_system(f2, 1, 1, {poly("D[1](y1) - y1", f2, 1, 1)}, 3);
    PolySpaceBasis ideal = vanishing_ideal(f2, 1, 1, 3, growth.points, 1, 1);
    CHECK(ideal.contains(poly("D[1](y1) - y1", f2, 1, 1)));
    CHECK_FALSE(ideal.contains(poly("y1", f2, 1, 1)));

    // Over the whole tiny domain only the zero polynomial vanishes.
    auto everything = solve_system(f2, 1, 1, {poly("0", f2, 1, 1)}, 2);
    REQUIRE(everything.points.size() == 8);
    PolySpaceBasis trivial = vanishing_ideal(f2, 1, 1, 2, everything.points, 1, 1);
    CHECK(trivial.coefficients.rows() == 0);
}

TEST_CASE("point ideals separate points") {
    PrimeField f2(2);
    HurwitzPoint zero2{{HurwitzSeries(f2, 1, 3), HurwitzSeries(f2, 1, 3)}};
    auto basis = point_ideal(zero2, 0, 1).polynomials();
    REQUIRE(basis.size() == 2);
    CHECK(basis[0] == poly("y1", f2, 2, 1));
    CHECK(basis[1] == poly("y2", f2, 2, 1));

    // With one order of precision, the coefficient table (1, 1) satisfies both
    // y1 - 1 and D[1](y1) - 1 at the shared evaluation window.
    HurwitzSeries short_ones(f2, 1, 1);
    short_ones.set_coefficient(MultiIndex{0}, Fp(f2, 1));
    short_ones.set_coefficient(MultiIndex{1}, Fp(f2, 1));
    PolySpaceBasis shallow = point_ideal(HurwitzPoint{{short_ones}}, 1, 1);
    CHECK(shallow.contains(poly("y1 - 1", f2, 1, 1)));
    CHECK(shallow.contains(poly("D[1](y1) - 1", f2, 1, 1)));

    // At full precision the exponential table satisfies the growth equation.
    HurwitzSeries ones(f2, 1, 3);
    for (const MultiIndex& k : indices_up_to(1, 3)) ones.set_coefficient(k, Fp(f2, 1));
    HurwitzPoint at_ones{{ones}};
    PolySpaceBasis ideal = point_ideal(at_ones, 1, 1);
    CHECK(ideal.contains(poly("D[1](y1) - y1", f2, 1, 1)));
    CHECK_FALSE(ideal.contains(poly("y1", f2, 1, 1)));

    HurwitzPoint at_zero{{HurwitzSeries(f2, 1, 3)}};
    CHECK_FALSE(point_ideal(at_zero, 1, 1).contains(poly("y1 - 1", f2, 1, 1)));
}

TEST_CASE("the one-sided inclusion certificate") {
    PrimeField f2(2);
    Report r1 = check_vanishing_inclusion(f2, 1, 1, {poly("D[1](y1) - y1", f2, 1, 1)}, 3, 1, 1);
    CHECK(r1.passed());
    bool equality_note = false;
    for (const auto& e : r1.entries) {
        if (e.name == "inclusion.equality" && e.status == "UNVERIFIED") equality_note = true;
    }
    CHECK(equality_note);

    CHECK(check_vanishing_inclusion(f2, 1, 1, {poly("0", f2, 1, 1)}, 3, 1, 1).passed());
    CHECK(check_vanishing_inclusion(f2, 1, 1, {poly("y1", f2, 1, 1)}, 3, 1, 2).passed());
}

TEST_CASE("one-sided Galois laws on finite instances") {
    PrimeField f2(2);
    std::vector<DiffPolynomial> gens{poly("D[1](y1) - y1", f2, 1, 1)};
    auto zeros = solve_system(f2, 1, 1, gens, 3);
    PolySpaceBasis ideal = vanishing_ideal(f2, 1, 1, 3, zeros.points, 1, 2);
    for (const DiffPolynomial& g : gens) CHECK(ideal.contains(g));
    for (const HurwitzPoint& x : zeros.points) {
        for (const DiffPolynomial& f : ideal.polynomials()) {
            CHECK(f.eval(x.coords).is_zero());
        }
    }
}

TEST_CASE("monotonicity of zero sets") {
    PrimeField f2(2);
    auto smaller = solve_system(f2, 1, 1, {poly("D[1](y1) - y1", f2, 1, 1)}, 3);
    auto larger = solve_system(
        f2, 1, 1, {poly("D[1](y1) - y1", f2, 1, 1), poly("y1", f2, 1, 1)}, 3);
    for (const HurwitzPoint& x : larger.points) {
        bool found = false;
        for (const HurwitzPoint& y : smaller.points) {
            if (x.key() == y.key()) found = true;
        }
        CHECK(found);
    }
    CHECK(larger.points.size() == 1);  // only the zero point survives y1 = 0
}

TEST_CASE("regular maps: application and pullback agree pointwise") {
    PrimeField f2(2);
    RegularMap identity = RegularMap::make(1, {poly("y1", f2, 1, 1)});
    DiffPolynomial g = poly("D[1](y1) + y1^2", f2, 1, 1);
    CHECK(pullback(identity, g) == g);

    RegularMap square = RegularMap::make(1, {poly("y1^2", f2, 1, 1)});
    CHECK(pullback(square, poly("D[1](y1)", f2, 1, 1)).is_zero());

    std::mt19937 rng(57);
    for (int rep = 0; rep < 10; ++rep) {
        RegularMap map = RegularMap::make(
            2, {random_poly(rng, f2, 2, 1, 1, 2, 3), random_poly(rng, f2, 2, 1, 1, 2, 3)});
        DiffPolynomial g2 = random_poly(rng, f2, 2, 1, 1, 2, 3);
        HurwitzPoint x{{random_series(rng, f2, 1, 6), random_series(rng, f2, 1, 6)}};
        HurwitzSeries lhs = pullback(map, g2).eval(x.coords);
        HurwitzSeries rhs = g2.eval(apply_map(map, x).coords);
        CHECK(HurwitzSeries::match(lhs, rhs).equal);
    }
}

TEST_CASE("pullback is functorial under composition") {
    PrimeField f2(2);
    std::mt19937 rng(61);
    for (int rep = 0; rep < 8; ++rep) {
        RegularMap first = RegularMap::make(
            1, {random_poly(rng, f2, 1, 1, 1, 2, 2), random_poly(rng, f2, 1, 1, 1, 2, 2)});
        RegularMap then = RegularMap::make(
            2, {random_poly(rng, f2, 2, 1, 1, 2, 2)});
        RegularMap composite = compose(first, then);
        DiffPolynomial g = random_poly(rng, f2, 1, 1, 1, 2, 2);
        CHECK(pullback(composite, g) == pullback(first, pullback(then, g)));
    }
}

TEST_CASE("dimension profiles of derivative-variable ideals") {
    auto none = dimension_profile({}, 1, 1, 8);
    REQUIRE(none.size() == 9);
    for (std::uint32_t t = 0; t <= 8; ++t) CHECK(none[t] == t + 1);

    auto all_of_y1 = derivative_closure_vars({DerivVar{1, MultiIndex{0}}}, 1, 1, 8);
    auto killed = dimension_profile(all_of_y1, 1, 1, 8);
    for (std::uint32_t t = 0; t <= 8; ++t) CHECK(killed[t] == 0);

    auto y2_tower = derivative_closure_vars({DerivVar{2, MultiIndex{0}}}, 2, 1, 8);
    auto partial = dimension_profile(y2_tower, 2, 1, 8);
    for (std::uint32_t t = 0; t <= 8; ++t) CHECK(partial[t] == t + 1);

    CHECK_THROWS_AS(dimension_profile({DerivVar{1, MultiIndex{0}}}, 1, 1, 4),
                    NotDerivativeClosedError);
}

TEST_CASE("profiles of shifted generator systems are shift-equivalent") {
    std::vector<DerivVar> plain{DerivVar{1, MultiIndex{0}}};
    std::vector<DerivVar> shifted{DerivVar{1, MultiIndex{0}}, DerivVar{1, MultiIndex{1}}};
    auto a = dimension_profile_for_generators(plain, 1, 9);
    auto b = dimension_profile_for_generators(shifted, 1, 9);
    for (std::uint32_t t = 0; t <= 9; ++t) CHECK(a[t] == t + 1);
    for (std::uint32_t t = 0; t <= 9; ++t) CHECK(b[t] == t + 2);
    const std::uint32_t c = 1;
    for (std::uint32_t t = 0; t + c <= 9; ++t) {
        CHECK(a[t] <= b[t + c]);
        CHECK(b[t] <= a[t + c]);
    }
}

TEST_CASE("system files parse with located errors") {
    DiffSystem sys = parse_system_file(read_file(fixture_path("sys_linear1.sys")));
    CHECK(sys.field.modulus() == 2);
    CHECK(sys.n == 1);
    CHECK(sys.precision == 3);
    REQUIRE(sys.polynomials.size() == 1);

    DiffSystem multi = parse_system_file(read_file(fixture_path("nss_07.sys")));
    CHECK(multi.n == 2);
    CHECK(multi.polynomials.size() == 2);

    CHECK_THROWS_AS(parse_system_file("p=2 m=1 n=1\ny1\n"), SyntaxError);
    try {
        parse_system_file("p=2 m=1 n=1 N=3\ny1 +\n");
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("solution sets print deterministically") {
    PrimeField f2(2);
    auto growth = solve_system(f2, 1, 1, {poly("D[1](y1) - y1", f2, 1, 1)}, 3);
    REQUIRE(growth.points.size() == 2);
    CHECK(growth.points[0].to_string() == "( 0 )");
    CHECK(growth.points[1].to_string() == "( [0]=1 [1]=1 [2]=1 [3]=1 )");
    CHECK(growth.search_domain == "p=2 m=1 n=1 N=3 space=2^4");
}
