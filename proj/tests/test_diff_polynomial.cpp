#include "doctest.h"

#include <random>
#include <vector>

#include "charp/diff_polynomial.hpp"
#include "oracles.hpp"

using namespace charp;
using namespace charp::test;

namespace {

DiffPolynomial var(const PrimeField& f, std::uint32_t n, std::uint32_t m, std::uint32_t i,
                   std::vector<std::uint32_t> theta = {}) {
    if (theta.empty()) theta.assign(m, 0);
    return DiffPolynomial::variable(f, n, m, DerivVar{i, MultiIndex{theta}});
}

}  // namespace

TEST_CASE("sparse arithmetic with cancellation") {
    PrimeField f2(2);
    DiffPolynomial y1 = var(f2, 1, 1, 1);
    DiffPolynomial one = DiffPolynomial::constant(f2, 1, 1, 1);

    CHECK((y1 + one) + y1 == one);  // characteristic 2
    DiffPolynomial dy1 = var(f2, 1, 1, 1, {1});
    DiffPolynomial prod = y1 * dy1;
    CHECK(prod.terms().size() == 1);
    CHECK(prod.degree() == 2);
    CHECK(prod.order() == 1);
    CHECK((y1 * DiffPolynomial(f2, 1, 1)).is_zero());
}

TEST_CASE("derivation examples") {
    PrimeField f2(2);
    DiffPolynomial y1 = var(f2, 1, 1, 1);
    CHECK(y1.pow(2).derive(1).is_zero());          // 2 y Dy = 0
    CHECK(y1.derive(1) == var(f2, 1, 1, 1, {1}));  // D(y) = D[1](y1)

    std::mt19937 rng(11);
    for (std::uint32_t p : {2u, 3u}) {
        PrimeField field(p);
        for (int rep = 0; rep < 10; ++rep) {
            DiffPolynomial f = random_poly(rng, field, 2, 1, 2, 2, 3);
            CHECK(f.pow(p).derive(1).is_zero());
        }
    }
}

TEST_CASE("derivative operators compose in any order") {
    PrimeField f2(2);
    DiffPolynomial y1 = var(f2, 1, 2, 1);
    CHECK(y1.apply_index(MultiIndex{0, 0}) == y1);
    CHECK(var(f2, 1, 1, 1).apply_index(MultiIndex{2}) == var(f2, 1, 1, 1, {2}));

    std::mt19937 rng(13);
    for (int rep = 0; rep < 10; ++rep) {
        DiffPolynomial f = random_poly(rng, f2, 2, 2, 1, 2, 3);
        CHECK(f.derive(1).derive(2) == f.derive(2).derive(1));
        CHECK(f.apply_index(MultiIndex{1, 1}) == f.derive(2).derive(1));
    }
}

TEST_CASE("Leibniz rule holds symbolically") {
    std::mt19937 rng(17);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        PrimeField field(p);
        for (int rep = 0; rep < 15; ++rep) {
            DiffPolynomial f = random_poly(rng, field, 2, 1, 2, 2, 3);
            DiffPolynomial g = random_poly(rng, field, 2, 1, 2, 2, 3);
            REQUIRE((f * g).derive(1) == f.derive(1) * g + f * g.derive(1));
        }
    }
}

TEST_CASE("evaluation at stated points") {
    PrimeField f2(2);
    DiffPolynomial eq = var(f2, 1, 1, 1, {1}) - var(f2, 1, 1, 1);

    // The all-ones series solves Dy = y.
    HurwitzSeries ones(f2, 1, 3);
    for (const MultiIndex& k : indices_up_to(1, 3)) ones.set_coefficient(k, Fp(f2, 1));
    HurwitzSeries value = eq.eval(std::vector<HurwitzSeries>{ones});
    CHECK(value.is_zero());
    CHECK(value.precision() == 2);

    DiffPolynomial y = var(f2, 1, 1, 1);
    CHECK(y.eval(std::vector<HurwitzSeries>{ones}) == ones);

    // Dy - 1 vanishes at any point whose shift is the constant 1.
    DiffPolynomial eq2 = var(f2, 1, 1, 1, {1}) - DiffPolynomial::constant(f2, 1, 1, 1);
    HurwitzSeries point(f2, 1, 3);
    point.set_coefficient(MultiIndex{0}, Fp(f2, 1));  // free choice
    point.set_coefficient(MultiIndex{1}, Fp(f2, 1));
    CHECK(eq2.eval(std::vector<HurwitzSeries>{point}).is_zero());

    CHECK_THROWS_AS(var(f2, 1, 1, 1, {1}).eval(std::vector<HurwitzSeries>{HurwitzSeries(f2, 1, 0)}),
                    PrecisionExhaustedError);
}

TEST_CASE("evaluation is a differential ring homomorphism") {
    std::mt19937 rng(19);
    for (std::uint32_t p : {2u, 3u}) {
        PrimeField field(p);
        for (int rep = 0; rep < 12; ++rep) {
            DiffPolynomial f = random_poly(rng, field, 2, 1, 2, 2, 3);
            DiffPolynomial g = random_poly(rng, field, 2, 1, 2, 2, 3);
            std::vector<HurwitzSeries> point{random_series(rng, field, 1, 5),
                                             random_series(rng, field, 1, 5)};
            auto sum = HurwitzSeries::match((f + g).eval(point), f.eval(point) + g.eval(point));
            CHECK(sum.equal);
            auto prod = HurwitzSeries::match((f * g).eval(point), f.eval(point) * g.eval(point));
            CHECK(prod.equal);
            auto der = HurwitzSeries::match(f.derive(1).eval(point), f.eval(point).derive(1));
            CHECK(der.equal);
        }
    }
}

TEST_CASE("parsing the expression grammar") {
    PrimeField f2(2);
    DiffPolynomial f = DiffPolynomial::parse("D[1](y1) + y1", f2, 1, 1);
    CHECK(f.terms().size() == 2);
    CHECK(f == var(f2, 1, 1, 1, {1}) + var(f2, 1, 1, 1));

    PrimeField f5(5);
    DiffPolynomial g = DiffPolynomial::parse("y1^2 * D[0,1](y2) - 3", f5, 2, 2);
    CHECK(g.terms().size() == 2);
    CHECK(g.coefficient(DiffMonomial{}).value() == 2);  // -3 mod 5
    CHECK(g.degree() == 3);
    CHECK(g.order() == 1);

    CHECK(DiffPolynomial::parse("(y1 + 1)^2", f2, 1, 1) ==
          var(f2, 1, 1, 1).pow(2) + DiffPolynomial::constant(f2, 1, 1, 1));

    CHECK_THROWS_AS(DiffPolynomial::parse("D[1(y1)", f2, 1, 1), SyntaxError);
    CHECK_THROWS_AS(DiffPolynomial::parse("y1 +", f2, 1, 1), SyntaxError);
    CHECK_THROWS_AS(DiffPolynomial::parse("y3", f2, 2, 1), UnknownVariableError);
    CHECK_THROWS_AS(DiffPolynomial::parse("D[1,2](y1)", f2, 1, 1), IndexOutOfRangeError);
    try {
        DiffPolynomial::parse("y1 *\n@", f2, 1, 1);
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 1);
    }
}

TEST_CASE("the parser rejects arbitrary garbage without crashing") {
    std::mt19937 rng(101);
    std::uniform_int_distribution<int> len(1, 24);
    const std::string alphabet = "yD[]()^*+-0123456789 ,z";
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    PrimeField f2(2);
    for (int rep = 0; rep < 500; ++rep) {
        std::string text;
        int n = len(rng);
        for (int i = 0; i < n; ++i) text += alphabet[pick(rng)];
        try {
            DiffPolynomial f = DiffPolynomial::parse(text, f2, 2, 1);
            CHECK(DiffPolynomial::parse(f.to_string(), f2, 2, 1) == f);
        } catch (const Error&) {
            // any library error is acceptable; crashes and foreign exceptions
            // are not
        }
    }
}

TEST_CASE("printing and parsing round-trip") {
    std::mt19937 rng(23);
    for (std::uint32_t p : {2u, 5u}) {
        PrimeField field(p);
        for (int rep = 0; rep < 25; ++rep) {
            DiffPolynomial f = random_poly(rng, field, 2, 2, 2, 3, 4);
            CAPTURE(f.to_string());
            REQUIRE(DiffPolynomial::parse(f.to_string(), field, 2, 2) == f);
        }
    }
    CHECK(DiffPolynomial(PrimeField(2), 1, 1).to_string() == "0");
    CHECK(DiffPolynomial::parse("0", PrimeField(2), 1, 1).is_zero());
}
