#include "charp/hurwitz.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace charp {

HurwitzSeries::HurwitzSeries(const PrimeField& field, std::size_t m, std::uint32_t precision)
    : field_(field), m_(m), precision_(precision) {}

HurwitzSeries HurwitzSeries::constant(const PrimeField& field, std::size_t m,
                                      std::uint32_t precision, std::int64_t value) {
    HurwitzSeries s(field, m, precision);
    s.set_coefficient(MultiIndex(m), Fp(field, value));
    return s;
}

HurwitzSeries HurwitzSeries::delta(const PrimeField& field, std::size_t m,
                                   std::uint32_t precision, const MultiIndex& idx,
                                   std::int64_t c) {
    HurwitzSeries s(field, m, precision);
    s.set_coefficient(idx, Fp(field, c));
    return s;
}

Fp HurwitzSeries::coefficient(const MultiIndex& idx) const {
    if (idx.arity() != m_) throw LengthMismatchError("index arity does not match series arity");
    if (idx.order() > precision_) {
        throw PrecisionExhaustedError("coefficient at order " + std::to_string(idx.order()) +
                                      " beyond precision " + std::to_string(precision_));
    }
    auto it = coeffs_.find(idx);
    return Fp(field_, it == coeffs_.end() ? 0 : it->second);
}

void HurwitzSeries::set_coefficient(const MultiIndex& idx, const Fp& value) {
    if (idx.arity() != m_) throw LengthMismatchError("index arity does not match series arity");
    if (value.modulus() != field_.modulus()) {
        throw MixedFieldError("coefficient from a different prime field");
    }
    if (idx.order() > precision_) {
        throw PrecisionExhaustedError("index order " + std::to_string(idx.order()) +
                                      " beyond precision " + std::to_string(precision_));
    }
    if (value.is_zero()) {
        coeffs_.erase(idx);
    } else {
        coeffs_.insert_or_assign(idx, value.value());
    }
}

Fp HurwitzSeries::free_term() const {
    auto it = coeffs_.find(MultiIndex(m_));
    return Fp(field_, it == coeffs_.end() ? 0 : it->second);
}

HurwitzSeries HurwitzSeries::truncated(std::uint32_t new_precision) const {
    if (new_precision >= precision_) return *this;
    HurwitzSeries s(field_, m_, new_precision);
    for (const auto& [idx, v] : coeffs_) {
        if (idx.order() <= new_precision) s.coeffs_.emplace(idx, v);
    }
    return s;
}

void HurwitzSeries::check_same_shape(const HurwitzSeries& f, const HurwitzSeries& g) {
    if (f.field_ != g.field_ || f.m_ != g.m_) {
        throw ShapeMismatchError("series over different fields or derivation counts");
    }
}

HurwitzSeries HurwitzSeries::operator-() const {
    HurwitzSeries s(field_, m_, precision_);
    const std::uint32_t p = field_.modulus();
    for (const auto& [idx, v] : coeffs_) s.coeffs_.emplace(idx, p - v);
    return s;
}

HurwitzSeries operator+(const HurwitzSeries& f, const HurwitzSeries& g) {
    HurwitzSeries::check_same_shape(f, g);
    HurwitzSeries s(f.field_, f.m_, std::min(f.precision_, g.precision_));
    for (const auto& [idx, v] : f.coeffs_) {
        if (idx.order() <= s.precision_) s.coeffs_.emplace(idx, v);
    }
    const std::uint32_t p = f.field_.modulus();
    for (const auto& [idx, v] : g.coeffs_) {
        if (idx.order() > s.precision_) continue;
        auto [it, inserted] = s.coeffs_.emplace(idx, v);
        if (!inserted) {
            std::uint32_t sum = it->second + v;
            if (sum >= p) sum -= p;
            if (sum == 0) {
                s.coeffs_.erase(it);
            } else {
                it->second = sum;
            }
        }
    }
    return s;
}

HurwitzSeries operator-(const HurwitzSeries& f, const HurwitzSeries& g) { return f + (-g); }

HurwitzSeries operator*(const HurwitzSeries& f, const HurwitzSeries& g) {
    HurwitzSeries::check_same_shape(f, g);
    HurwitzSeries s(f.field_, f.m_, std::min(f.precision_, g.precision_));
    const std::uint64_t p = f.field_.modulus();
    for (const auto& [i, fv] : f.coeffs_) {
        if (i.order() > s.precision_) continue;
        for (const auto& [j, gv] : g.coeffs_) {
            MultiIndex k = i.plus(j);
            if (k.order() > s.precision_) continue;
            std::uint64_t w = multi_binomial(k, i, f.field_).value();
            if (w == 0) continue;
            w = w * fv % p * gv % p;
            auto [it, inserted] = s.coeffs_.emplace(k, static_cast<std::uint32_t>(w));
            if (!inserted) {
                std::uint64_t sum = it->second + w;
                if (sum >= p) sum -= p;
                if (sum == 0) {
                    s.coeffs_.erase(it);
                } else {
                    it->second = static_cast<std::uint32_t>(sum);
                }
            }
        }
    }
    return s;
}

HurwitzSeries HurwitzSeries::scaled(const Fp& c) const {
    if (c.modulus() != field_.modulus()) throw MixedFieldError("scalar from a different field");
    HurwitzSeries s(field_, m_, precision_);
    if (c.is_zero()) return s;
    const std::uint64_t p = field_.modulus();
    for (const auto& [idx, v] : coeffs_) {
        s.coeffs_.emplace(idx, static_cast<std::uint32_t>(static_cast<std::uint64_t>(v) * c.value() % p));
    }
    return s;
}

HurwitzSeries HurwitzSeries::derive(std::size_t t) const {
    if (t < 1 || t > m_) throw LengthMismatchError("derivation index out of range");
    if (precision_ == 0) {
        throw PrecisionExhaustedError("cannot differentiate a series of precision 0");
    }
    HurwitzSeries s(field_, m_, precision_ - 1);
    const MultiIndex e = MultiIndex::unit(m_, t);
    for (const auto& [idx, v] : coeffs_) {
        if (auto shifted = idx.minus(e)) s.coeffs_.emplace(*shifted, v);
    }
    return s;
}

HurwitzSeries HurwitzSeries::apply_index(const MultiIndex& theta) const {
    if (theta.arity() != m_) throw LengthMismatchError("index arity does not match series arity");
    HurwitzSeries s = *this;
    for (std::size_t t = 1; t <= m_; ++t) {
        for (std::uint32_t k = 0; k < theta[t - 1]; ++k) s = s.derive(t);
    }
    return s;
}

HurwitzSeries HurwitzSeries::pow(std::uint64_t e) const {
    HurwitzSeries result = constant(field_, m_, precision_, 1);
    HurwitzSeries base = *this;
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

HurwitzSeries HurwitzSeries::pth_power() const { return pow(field_.modulus()); }

bool operator==(const HurwitzSeries& f, const HurwitzSeries& g) {
    return f.field_ == g.field_ && f.m_ == g.m_ && f.precision_ == g.precision_ &&
           f.coeffs_ == g.coeffs_;
}

SeriesMatch HurwitzSeries::match(const HurwitzSeries& f, const HurwitzSeries& g) {
    check_same_shape(f, g);
    std::uint32_t shared = std::min(f.precision_, g.precision_);
    return SeriesMatch{f.truncated(shared).coeffs_ == g.truncated(shared).coeffs_, shared};
}

std::string HurwitzSeries::to_string() const {
    std::ostringstream out;
    out << "p=" << field_.modulus() << " m=" << m_ << " N=" << precision_ << " :";
    for (const auto& [idx, v] : coeffs_) {
        out << " [";
        for (std::size_t i = 0; i < idx.arity(); ++i) {
            if (i) out << ',';
            out << idx[i];
        }
        out << "]=" << v;
    }
    return out.str();
}

std::string HurwitzSeries::coeffs_to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [idx, v] : coeffs_) {
        if (!first) out << ' ';
        first = false;
        out << '[';
        for (std::size_t i = 0; i < idx.arity(); ++i) {
            if (i) out << ',';
            out << idx[i];
        }
        out << "]=" << v;
    }
    return out.str();
}

namespace {

// Minimal cursor over one line of text, tracking the column for errors.
struct LineScanner {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() { return pos < text.size() ? text[pos] : '\0'; }
    [[noreturn]] void fail(const std::string& msg) { throw SyntaxError(1, pos + 1, msg); }
    void expect(char c) {
        skip_ws();
        if (pos >= text.size() || text[pos] != c) {
            fail(std::string("expected '") + c + "'");
        }
        ++pos;
    }
    std::uint64_t number() {
        skip_ws();
        std::uint64_t value = 0;
        auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
        if (ec != std::errc() || ptr == text.data() + pos) fail("expected a number");
        pos = static_cast<std::size_t>(ptr - text.data());
        return value;
    }
    std::uint64_t keyed_number(std::string_view key) {
        skip_ws();
        if (text.compare(pos, key.size(), key) != 0) fail("expected '" + std::string(key) + "'");
        pos += key.size();
        expect('=');
        return number();
    }
};

}  // namespace

HurwitzSeries HurwitzSeries::parse(std::string_view text) {
    LineScanner sc{text};
    std::uint64_t p = sc.keyed_number("p");
    std::uint64_t m = sc.keyed_number("m");
    std::uint64_t n = sc.keyed_number("N");
    sc.expect(':');
    PrimeField field(static_cast<std::uint32_t>(p));
    HurwitzSeries s(field, static_cast<std::size_t>(m), static_cast<std::uint32_t>(n));
    while (!sc.done()) {
        sc.expect('[');
        std::vector<std::uint32_t> coords;
        coords.push_back(static_cast<std::uint32_t>(sc.number()));
        while (sc.peek() == ',') {
            sc.expect(',');
            coords.push_back(static_cast<std::uint32_t>(sc.number()));
        }
        sc.expect(']');
        sc.expect('=');
        std::uint64_t value = sc.number();
        if (coords.size() != m) sc.fail("index arity does not match m");
        MultiIndex idx{coords};
        if (idx.order() > s.precision()) sc.fail("index order beyond declared precision");
        s.set_coefficient(idx, Fp(field, static_cast<std::int64_t>(value)));
    }
    return s;
}

}  // namespace charp
