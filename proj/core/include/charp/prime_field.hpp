#pragma once

#include <cstdint>
#include <compare>

#include "charp/errors.hpp"
#include "charp/multi_index.hpp"

namespace charp {

/// A prime field F_p, 2 <= p < 2^31. Primality is checked at construction
/// (deterministic Miller-Rabin), so a PrimeField value is always valid.
class PrimeField {
public:
    explicit PrimeField(std::uint32_t p);

    std::uint32_t modulus() const { return p_; }

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
    std::uint32_t p_;
};

/// An element of F_p in canonical form: value in [0, p).
class Fp {
public:
    Fp(const PrimeField& field, std::int64_t value);

    std::uint32_t value() const { return value_; }
    std::uint32_t modulus() const { return p_; }
    PrimeField field() const { return PrimeField(p_); }
    bool is_zero() const { return value_ == 0; }

    Fp operator-() const;
    friend Fp operator+(Fp a, Fp b);
    friend Fp operator-(Fp a, Fp b);
    friend Fp operator*(Fp a, Fp b);
    friend Fp operator/(Fp a, Fp b);  // throws DivisionByZeroError

    Fp inverse() const;               // throws DivisionByZeroError on 0
    Fp pow(std::uint64_t e) const;

    friend bool operator==(const Fp& a, const Fp& b) {
        check_same_field(a, b);
        return a.value_ == b.value_;
    }

private:
    static void check_same_field(const Fp& a, const Fp& b);

    std::uint32_t value_;
    std::uint32_t p_;
};

bool is_prime(std::uint32_t n);

/// C(n, k) mod p via Lucas' theorem on base-p digits; 0 when k > n.
Fp binomial_mod_p(std::uint64_t n, std::uint64_t k, const PrimeField& field);

/// Product over coordinates of C(k_t, i_t) mod p; the coefficient kernel of
/// the Hurwitz product with several commuting derivations.
Fp multi_binomial(const MultiIndex& k, const MultiIndex& i, const PrimeField& field);

}  // namespace charp
