#include "charp/prime_field.hpp"

#include <string>

namespace charp {

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

bool miller_rabin(std::uint64_t n, std::uint64_t a) {
    if (a % n == 0) return true;
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < r; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

}  // namespace

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t q : {2u, 3u, 5u, 7u, 11u, 13u}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    // Deterministic for n < 3'215'031'751, which covers all 32-bit inputs here.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull}) {
        if (!miller_rabin(n, a)) return false;
    }
    return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
    if (p >= (1u << 31)) throw NotPrimeError("modulus " + std::to_string(p) + " exceeds 2^31");
    if (!is_prime(p)) throw NotPrimeError(std::to_string(p) + " is not prime");
}

Fp::Fp(const PrimeField& field, std::int64_t value) : p_(field.modulus()) {
    std::int64_t r = value % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    value_ = static_cast<std::uint32_t>(r);
}

void Fp::check_same_field(const Fp& a, const Fp& b) {
    if (a.p_ != b.p_) {
        throw MixedFieldError("elements of F_" + std::to_string(a.p_) + " and F_" +
                              std::to_string(b.p_) + " cannot be combined");
    }
}

Fp Fp::operator-() const {
    Fp r = *this;
    r.value_ = value_ == 0 ? 0 : p_ - value_;
    return r;
}

Fp operator+(Fp a, Fp b) {
    Fp::check_same_field(a, b);
    std::uint64_t s = static_cast<std::uint64_t>(a.value_) + b.value_;
    if (s >= a.p_) s -= a.p_;
    a.value_ = static_cast<std::uint32_t>(s);
    return a;
}

Fp operator-(Fp a, Fp b) {
    Fp::check_same_field(a, b);
    std::int64_t s = static_cast<std::int64_t>(a.value_) - b.value_;
    if (s < 0) s += a.p_;
    a.value_ = static_cast<std::uint32_t>(s);
    return a;
}

Fp operator*(Fp a, Fp b) {
    Fp::check_same_field(a, b);
    a.value_ = static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.value_) * b.value_ % a.p_);
    return a;
}

Fp operator/(Fp a, Fp b) {
    Fp::check_same_field(a, b);
    return a * b.inverse();
}

Fp Fp::inverse() const {
    if (value_ == 0) throw DivisionByZeroError("inverse of 0 in F_" + std::to_string(p_));
    return pow(p_ - 2);
}

Fp Fp::pow(std::uint64_t e) const {
    Fp r(PrimeField(p_), 1);
    r.value_ = static_cast<std::uint32_t>(pow_mod(value_, e, p_));
    return r;
}

Fp binomial_mod_p(std::uint64_t n, std::uint64_t k, const PrimeField& field) {
    const std::uint64_t p = field.modulus();
    std::uint64_t result = 1;
    while (k > 0 || n > 0) {
        std::uint64_t nd = n % p, kd = k % p;
        if (kd > nd) return Fp(field, 0);
        // C(nd, kd) mod p with nd, kd < p < 2^31; the running product fits in
        // 64 bits between reductions.
        std::uint64_t num = 1, den = 1;
        std::uint64_t span = kd < nd - kd ? kd : nd - kd;
        for (std::uint64_t i = 1; i <= span; ++i) {
            num = num * ((nd + 1 - i) % p) % p;
            den = den * (i % p) % p;
        }
        std::uint64_t digit = num * pow_mod(den, p - 2, p) % p;
        result = result * digit % p;
        n /= p;
        k /= p;
    }
    return Fp(field, static_cast<std::int64_t>(result));
}

Fp multi_binomial(const MultiIndex& k, const MultiIndex& i, const PrimeField& field) {
    if (k.arity() != i.arity()) {
        throw LengthMismatchError("multi-indices of arity " + std::to_string(k.arity()) +
                                  " and " + std::to_string(i.arity()));
    }
    Fp result(field, 1);
    for (std::size_t t = 0; t < k.arity(); ++t) {
        result = result * binomial_mod_p(k[t], i[t], field);
    }
    return result;
}

}  // namespace charp
