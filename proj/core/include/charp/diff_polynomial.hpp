#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "charp/hurwitz.hpp"
#include "charp/multi_index.hpp"
#include "charp/prime_field.hpp"

namespace charp {

/// A derivative variable theta(y_i): the i-th indeterminate hit by the
/// derivative operator theta. Ordered by (variable, graded-lex theta).
struct DerivVar {
    std::uint32_t var;  // 1-based indeterminate index
    MultiIndex theta;

    friend bool operator==(const DerivVar& a, const DerivVar& b) {
        return a.var == b.var && a.theta == b.theta;
    }
    friend std::strong_ordering operator<=>(const DerivVar& a, const DerivVar& b) {
        if (auto c = a.var <=> b.var; c != 0) return c;
        return a.theta <=> b.theta;
    }
};

/// A power product of derivative variables; exponents are positive, factors
/// kept sorted, so the representation is canonical.
class DiffMonomial {
public:
    DiffMonomial() = default;

    static DiffMonomial variable(const DerivVar& v, std::uint32_t exp = 1);

    const std::map<DerivVar, std::uint32_t>& factors() const { return factors_; }
    bool is_constant() const { return factors_.empty(); }
    std::uint32_t degree() const;
    std::uint32_t order() const;  // max theta order over the factors

    DiffMonomial times(const DiffMonomial& other) const;
    DiffMonomial times(const DerivVar& v, std::uint32_t exp = 1) const;

    friend bool operator==(const DiffMonomial& a, const DiffMonomial& b) {
        return a.factors_ == b.factors_;
    }
    friend std::strong_ordering operator<=>(const DiffMonomial& a, const DiffMonomial& b);

private:
    std::map<DerivVar, std::uint32_t> factors_;
};

/// Sparse differential polynomial in n indeterminates over F_p with m
/// derivations. Terms map canonical monomials to nonzero coefficients.
class DiffPolynomial {
public:
    DiffPolynomial(const PrimeField& field, std::uint32_t n, std::uint32_t m);

    static DiffPolynomial constant(const PrimeField& field, std::uint32_t n, std::uint32_t m,
                                   std::int64_t c);
    static DiffPolynomial variable(const PrimeField& field, std::uint32_t n, std::uint32_t m,
                                   const DerivVar& v);
    static DiffPolynomial monomial(const PrimeField& field, std::uint32_t n, std::uint32_t m,
                                   const DiffMonomial& mono, std::int64_t c = 1);

    const PrimeField& field() const { return field_; }
    std::uint32_t vars() const { return n_; }
    std::uint32_t derivations() const { return m_; }
    const std::map<DiffMonomial, std::uint32_t>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    std::uint32_t order() const;   // max theta order over all factors
    std::uint32_t degree() const;  // max total degree

    Fp coefficient(const DiffMonomial& mono) const;
    void add_term(const DiffMonomial& mono, const Fp& c);

    DiffPolynomial operator-() const;
    friend DiffPolynomial operator+(const DiffPolynomial& f, const DiffPolynomial& g);
    friend DiffPolynomial operator-(const DiffPolynomial& f, const DiffPolynomial& g);
    friend DiffPolynomial operator*(const DiffPolynomial& f, const DiffPolynomial& g);
    DiffPolynomial scaled(const Fp& c) const;
    DiffPolynomial pow(std::uint32_t e) const;

    /// Derivation along the 1-based coordinate t, extended by the Leibniz rule;
    /// on a derivative variable it bumps theta by e_t.
    DiffPolynomial derive(std::size_t t) const;
    DiffPolynomial apply_index(const MultiIndex& theta) const;

    /// Evaluate at a point of truncated series (one per indeterminate).
    /// The result is exact at precision min(point precisions) - order().
    HurwitzSeries eval(std::span<const HurwitzSeries> point) const;

    friend bool operator==(const DiffPolynomial& f, const DiffPolynomial& g);

    std::string to_string() const;
    /// Parse the expression grammar:
    ///   expr   := term (('+'|'-') term)*
    ///   term   := factor ('*' factor)*
    ///   factor := atom ('^' NAT)?
    ///   atom   := INT | VAR | DOP '(' VAR ')' | '(' expr ')'
    ///   VAR    := 'y' NAT            DOP := 'D[' NAT (',' NAT)* ']'
    /// with exactly m entries in each DOP and integers reduced mod p.
    static DiffPolynomial parse(std::string_view text, const PrimeField& field, std::uint32_t n,
                                std::uint32_t m);

private:
    static void check_same_shape(const DiffPolynomial& f, const DiffPolynomial& g);

    PrimeField field_;
    std::uint32_t n_, m_;
    std::map<DiffMonomial, std::uint32_t> terms_;  // nonzero residues only
};

}  // namespace charp
