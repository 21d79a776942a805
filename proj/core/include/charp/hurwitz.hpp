#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "charp/multi_index.hpp"
#include "charp/prime_field.hpp"

namespace charp {

/// Outcome of a precision-aware comparison: whether the two series agree, and
/// the precision (shared window) at which the statement holds.
struct SeriesMatch {
    bool equal;
    std::uint32_t precision;
};

/// A Hurwitz series over F_p with m commuting derivations, truncated to the
/// window of indices of total order <= precision. Coefficients are stored
/// sparsely (zeros absent) in graded-lex index order, so every traversal is
/// deterministic.
///
/// Arithmetic is exact on the shared window: the product coefficient at k only
/// consults indices <= k, so two series known to precision N have a product
/// known to precision N. Differentiation shifts indices down and therefore
/// loses one order of precision.
class HurwitzSeries {
public:
    HurwitzSeries(const PrimeField& field, std::size_t m, std::uint32_t precision);

    static HurwitzSeries constant(const PrimeField& field, std::size_t m,
                                  std::uint32_t precision, std::int64_t value);
    /// c * delta_idx (single-coefficient series).
    static HurwitzSeries delta(const PrimeField& field, std::size_t m, std::uint32_t precision,
                               const MultiIndex& idx, std::int64_t c = 1);

    const PrimeField& field() const { return field_; }
    std::size_t arity() const { return m_; }
    std::uint32_t precision() const { return precision_; }
    bool is_zero() const { return coeffs_.empty(); }

    /// Coefficient at idx; zero if absent. Indices outside the precision
    /// window are not knowable and raise PrecisionExhaustedError.
    Fp coefficient(const MultiIndex& idx) const;
    void set_coefficient(const MultiIndex& idx, const Fp& value);
    const std::map<MultiIndex, std::uint32_t>& coefficients() const { return coeffs_; }

    /// Free term (coefficient at the zero index); a ring homomorphism to F_p.
    Fp free_term() const;

    /// Copy truncated to a smaller precision window.
    HurwitzSeries truncated(std::uint32_t new_precision) const;

    HurwitzSeries operator-() const;
    friend HurwitzSeries operator+(const HurwitzSeries& f, const HurwitzSeries& g);
    friend HurwitzSeries operator-(const HurwitzSeries& f, const HurwitzSeries& g);
    friend HurwitzSeries operator*(const HurwitzSeries& f, const HurwitzSeries& g);
    HurwitzSeries scaled(const Fp& c) const;

    /// Shift derivation along the 1-based coordinate t; precision drops by 1.
    HurwitzSeries derive(std::size_t t) const;
    HurwitzSeries apply_index(const MultiIndex& theta) const;

    HurwitzSeries pow(std::uint64_t e) const;
    /// f^p for the field characteristic p. Vanishes whenever the free term is
    /// zero (the window with no free term consists of nilpotents).
    HurwitzSeries pth_power() const;

    /// Strict identity: same field, arity, precision, and coefficient table.
    friend bool operator==(const HurwitzSeries& f, const HurwitzSeries& g);
    /// Agreement on the shared window, reporting the precision of the claim.
    static SeriesMatch match(const HurwitzSeries& f, const HurwitzSeries& g);

    /// Canonical text form, e.g. "p=2 m=1 N=3 : [0]=1 [1]=1". Parsing and
    /// printing round-trip bit-exactly.
    std::string to_string() const;
    static HurwitzSeries parse(std::string_view text);
    /// Just the coefficient list ("[0]=1 [1]=1"), or "0" for the zero series.
    std::string coeffs_to_string() const;

private:
    static void check_same_shape(const HurwitzSeries& f, const HurwitzSeries& g);

    PrimeField field_;
    std::size_t m_;
    std::uint32_t precision_;
    std::map<MultiIndex, std::uint32_t> coeffs_;  // nonzero residues only
};

}  // namespace charp
