#include "charp/diff_polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace charp {

DiffMonomial DiffMonomial::variable(const DerivVar& v, std::uint32_t exp) {
    DiffMonomial m;
    if (exp > 0) m.factors_.emplace(v, exp);
    return m;
}

std::uint32_t DiffMonomial::degree() const {
    std::uint32_t d = 0;
    for (const auto& [v, e] : factors_) d += e;
    return d;
}

std::uint32_t DiffMonomial::order() const {
    std::uint32_t o = 0;
    for (const auto& [v, e] : factors_) o = std::max(o, v.theta.order());
    return o;
}

DiffMonomial DiffMonomial::times(const DiffMonomial& other) const {
    DiffMonomial m = *this;
    for (const auto& [v, e] : other.factors_) {
        auto [it, inserted] = m.factors_.emplace(v, e);
        if (!inserted) it->second += e;
    }
    return m;
}

DiffMonomial DiffMonomial::times(const DerivVar& v, std::uint32_t exp) const {
    DiffMonomial m = *this;
    if (exp > 0) {
        auto [it, inserted] = m.factors_.emplace(v, exp);
        if (!inserted) it->second += exp;
    }
    return m;
}

std::strong_ordering operator<=>(const DiffMonomial& a, const DiffMonomial& b) {
    return std::lexicographical_compare_three_way(
        a.factors_.begin(), a.factors_.end(), b.factors_.begin(), b.factors_.end(),
        [](const auto& x, const auto& y) -> std::strong_ordering {
            if (auto c = x.first <=> y.first; c != 0) return c;
            return x.second <=> y.second;
        });
}

DiffPolynomial::DiffPolynomial(const PrimeField& field, std::uint32_t n, std::uint32_t m)
    : field_(field), n_(n), m_(m) {}

DiffPolynomial DiffPolynomial::constant(const PrimeField& field, std::uint32_t n, std::uint32_t m,
                                        std::int64_t c) {
    DiffPolynomial f(field, n, m);
    f.add_term(DiffMonomial{}, Fp(field, c));
    return f;
}

DiffPolynomial DiffPolynomial::variable(const PrimeField& field, std::uint32_t n, std::uint32_t m,
                                        const DerivVar& v) {
    return monomial(field, n, m, DiffMonomial::variable(v), 1);
}

DiffPolynomial DiffPolynomial::monomial(const PrimeField& field, std::uint32_t n, std::uint32_t m,
                                        const DiffMonomial& mono, std::int64_t c) {
    DiffPolynomial f(field, n, m);
    f.add_term(mono, Fp(field, c));
    return f;
}

std::uint32_t DiffPolynomial::order() const {
    std::uint32_t o = 0;
    for (const auto& [mono, c] : terms_) o = std::max(o, mono.order());
    return o;
}

std::uint32_t DiffPolynomial::degree() const {
    std::uint32_t d = 0;
    for (const auto& [mono, c] : terms_) d = std::max(d, mono.degree());
    return d;
}

Fp DiffPolynomial::coefficient(const DiffMonomial& mono) const {
    auto it = terms_.find(mono);
    return Fp(field_, it == terms_.end() ? 0 : it->second);
}

void DiffPolynomial::add_term(const DiffMonomial& mono, const Fp& c) {
    if (c.modulus() != field_.modulus()) throw MixedFieldError("coefficient from another field");
    for (const auto& [v, e] : mono.factors()) {
        if (v.var < 1 || v.var > n_) {
            throw ShapeMismatchError("variable index out of range for this ring");
        }
        if (v.theta.arity() != m_) {
            throw ShapeMismatchError("derivative index arity does not match the ring");
        }
    }
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(mono, c.value());
    if (!inserted) {
        std::uint32_t sum = it->second + c.value();
        if (sum >= field_.modulus()) sum -= field_.modulus();
        if (sum == 0) {
            terms_.erase(it);
        } else {
            it->second = sum;
        }
    }
}

void DiffPolynomial::check_same_shape(const DiffPolynomial& f, const DiffPolynomial& g) {
    if (f.field_ != g.field_ || f.n_ != g.n_ || f.m_ != g.m_) {
        throw ShapeMismatchError("differential polynomials from different rings");
    }
}

DiffPolynomial DiffPolynomial::operator-() const {
    DiffPolynomial f(field_, n_, m_);
    for (const auto& [mono, c] : terms_) f.terms_.emplace(mono, field_.modulus() - c);
    return f;
}

DiffPolynomial operator+(const DiffPolynomial& f, const DiffPolynomial& g) {
    DiffPolynomial::check_same_shape(f, g);
    DiffPolynomial out = f;
    for (const auto& [mono, c] : g.terms_) {
        out.add_term(mono, Fp(out.field_, static_cast<std::int64_t>(c)));
    }
    return out;
}

DiffPolynomial operator-(const DiffPolynomial& f, const DiffPolynomial& g) { return f + (-g); }

DiffPolynomial operator*(const DiffPolynomial& f, const DiffPolynomial& g) {
    DiffPolynomial::check_same_shape(f, g);
    DiffPolynomial out(f.field_, f.n_, f.m_);
    for (const auto& [fm, fc] : f.terms_) {
        for (const auto& [gm, gc] : g.terms_) {
            std::uint64_t c = static_cast<std::uint64_t>(fc) * gc % f.field_.modulus();
            out.add_term(fm.times(gm), Fp(f.field_, static_cast<std::int64_t>(c)));
        }
    }
    return out;
}

DiffPolynomial DiffPolynomial::scaled(const Fp& c) const {
    DiffPolynomial out(field_, n_, m_);
    for (const auto& [mono, v] : terms_) {
        out.add_term(mono, Fp(field_, static_cast<std::int64_t>(v)) * c);
    }
    return out;
}

DiffPolynomial DiffPolynomial::pow(std::uint32_t e) const {
    DiffPolynomial result = constant(field_, n_, m_, 1);
    DiffPolynomial base = *this;
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

DiffPolynomial DiffPolynomial::derive(std::size_t t) const {
    if (t < 1 || t > m_) throw LengthMismatchError("derivation index out of range");
    DiffPolynomial out(field_, n_, m_);
    const MultiIndex e_t = MultiIndex::unit(m_, t);
    for (const auto& [mono, c] : terms_) {
        // Leibniz across the factors of the monomial.
        for (const auto& [v, e] : mono.factors()) {
            DiffMonomial rest;
            for (const auto& [w, we] : mono.factors()) {
                if (w == v) {
                    if (we > 1) rest = rest.times(w, we - 1);
                } else {
                    rest = rest.times(w, we);
                }
            }
            DerivVar bumped{v.var, v.theta.plus(e_t)};
            std::uint64_t coeff = static_cast<std::uint64_t>(c) * e % field_.modulus();
            out.add_term(rest.times(bumped), Fp(field_, static_cast<std::int64_t>(coeff)));
        }
    }
    return out;
}

DiffPolynomial DiffPolynomial::apply_index(const MultiIndex& theta) const {
    if (theta.arity() != m_) throw LengthMismatchError("index arity does not match the ring");
    DiffPolynomial out = *this;
    for (std::size_t t = 1; t <= m_; ++t) {
        for (std::uint32_t k = 0; k < theta[t - 1]; ++k) out = out.derive(t);
    }
    return out;
}

HurwitzSeries DiffPolynomial::eval(std::span<const HurwitzSeries> point) const {
    if (point.size() != n_) throw ShapeMismatchError("point arity does not match the ring");
    std::uint32_t min_prec = point.empty() ? 0 : point[0].precision();
    for (const HurwitzSeries& s : point) {
        if (s.field() != field_ || s.arity() != m_) {
            throw ShapeMismatchError("point coordinates do not match the ring shape");
        }
        min_prec = std::min(min_prec, s.precision());
    }
    const std::uint32_t ord = order();
    if (ord > min_prec) {
        throw PrecisionExhaustedError("evaluation needs derivatives of order " +
                                      std::to_string(ord) + " but precision is only " +
                                      std::to_string(min_prec));
    }
    const std::uint32_t target = min_prec - ord;
    std::map<DerivVar, HurwitzSeries> derived;
    HurwitzSeries acc(field_, m_, target);
    for (const auto& [mono, c] : terms_) {
        HurwitzSeries term = HurwitzSeries::constant(field_, m_, target,
                                                     static_cast<std::int64_t>(c));
        for (const auto& [v, e] : mono.factors()) {
            auto it = derived.find(v);
            if (it == derived.end()) {
                HurwitzSeries d = point[v.var - 1].apply_index(v.theta).truncated(target);
                it = derived.emplace(v, std::move(d)).first;
            }
            term = term * it->second.pow(e);
        }
        acc = acc + term;
    }
    return acc;
}

bool operator==(const DiffPolynomial& f, const DiffPolynomial& g) {
    return f.field_ == g.field_ && f.n_ == g.n_ && f.m_ == g.m_ && f.terms_ == g.terms_;
}

std::string DiffPolynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [mono, c] : terms_) {
        if (!first) out << " + ";
        first = false;
        if (mono.is_constant()) {
            out << c;
            continue;
        }
        bool printed = false;
        if (c != 1) {
            out << c;
            printed = true;
        }
        for (const auto& [v, e] : mono.factors()) {
            if (printed) out << "*";
            printed = true;
            if (v.theta.is_zero()) {
                out << "y" << v.var;
            } else {
                out << "D[";
                for (std::size_t i = 0; i < v.theta.arity(); ++i) {
                    if (i) out << ',';
                    out << v.theta[i];
                }
                out << "](y" << v.var << ")";
            }
            if (e > 1) out << "^" << e;
        }
    }
    return out.str();
}

namespace {

// Recursive-descent parser for the expression grammar. Positions are tracked
// as (line, column), both 1-based.
class PolyParser {
public:
    PolyParser(std::string_view text, const PrimeField& field, std::uint32_t n, std::uint32_t m)
        : text_(text), field_(field), n_(n), m_(m) {}

    DiffPolynomial parse() {
        DiffPolynomial f = expr();
        skip_ws();
        if (pos_ < text_.size()) fail("unexpected trailing input");
        return f;
    }

private:
    DiffPolynomial expr() {
        skip_ws();
        bool negate = false;
        if (peek() == '-') {
            ++pos_, ++col_;
            negate = true;
        }
        DiffPolynomial acc = term();
        if (negate) acc = -acc;
        while (true) {
            skip_ws();
            char c = peek();
            if (c == '+') {
                advance();
                acc = acc + term();
            } else if (c == '-') {
                advance();
                acc = acc - term();
            } else {
                break;
            }
        }
        return acc;
    }

    DiffPolynomial term() {
        DiffPolynomial acc = factor();
        while (true) {
            skip_ws();
            if (peek() == '*') {
                advance();
                acc = acc * factor();
            } else {
                break;
            }
        }
        return acc;
    }

    DiffPolynomial factor() {
        DiffPolynomial base = atom();
        skip_ws();
        if (peek() == '^') {
            advance();
            std::uint64_t e = number("exponent");
            if (e > 1u << 20) fail("exponent too large");
            return base.pow(static_cast<std::uint32_t>(e));
        }
        return base;
    }

    DiffPolynomial atom() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            advance();
            DiffPolynomial inner = expr();
            expect(')');
            return inner;
        }
        if (c == 'y') {
            return DiffPolynomial::variable(field_, n_, m_, DerivVar{var_index(), MultiIndex(m_)});
        }
        if (c == 'D') {
            advance();
            expect('[');
            std::vector<std::uint32_t> coords;
            coords.push_back(static_cast<std::uint32_t>(number("derivative order")));
            while (true) {
                skip_ws();
                if (peek() == ',') {
                    advance();
                    coords.push_back(static_cast<std::uint32_t>(number("derivative order")));
                } else {
                    break;
                }
            }
            expect(']');
            if (coords.size() != m_) {
                throw IndexOutOfRangeError(line_, col_,
                                           "derivative operator has " +
                                               std::to_string(coords.size()) + " entries, ring has " +
                                               std::to_string(m_) + " derivations");
            }
            expect('(');
            skip_ws();
            if (peek() != 'y') fail("expected a variable inside D[...](...)");
            std::uint32_t var = var_index();
            expect(')');
            return DiffPolynomial::variable(field_, n_, m_, DerivVar{var, MultiIndex(coords)});
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::uint64_t value = number("integer");
            return DiffPolynomial::constant(field_, n_, m_,
                                            static_cast<std::int64_t>(value % field_.modulus()));
        }
        fail("expected an integer, variable, derivative, or parenthesized expression");
    }

    std::uint32_t var_index() {
        // Caller saw 'y'.
        std::size_t at_line = line_, at_col = col_;
        advance();  // consume 'y'
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a variable index");
        std::uint64_t idx = number("variable index");
        if (idx < 1 || idx > n_) {
            throw UnknownVariableError(at_line, at_col,
                                       "variable y" + std::to_string(idx) + " out of [1," +
                                           std::to_string(n_) + "]");
        }
        return static_cast<std::uint32_t>(idx);
    }

    std::uint64_t number(const std::string& what) {
        skip_ws();
        std::uint64_t value = 0;
        auto begin = text_.data() + pos_;
        auto [ptr, ec] = std::from_chars(begin, text_.data() + text_.size(), value);
        if (ec != std::errc() || ptr == begin) fail("expected " + what);
        std::size_t len = static_cast<std::size_t>(ptr - begin);
        pos_ += len;
        col_ += len;
        return value;
    }

    void skip_ws() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '\n') {
                ++line_;
                col_ = 1;
                ++pos_;
            } else if (c == ' ' || c == '\t' || c == '\r') {
                ++pos_;
                ++col_;
            } else {
                break;
            }
        }
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    void advance() {
        ++pos_;
        ++col_;
    }
    void expect(char c) {
        skip_ws();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        advance();
    }
    [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(line_, col_, msg); }

    std::string_view text_;
    PrimeField field_;
    std::uint32_t n_, m_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1, col_ = 1;
};

}  // namespace

DiffPolynomial DiffPolynomial::parse(std::string_view text, const PrimeField& field,
                                     std::uint32_t n, std::uint32_t m) {
    return PolyParser(text, field, n, m).parse();
}

}  // namespace charp
