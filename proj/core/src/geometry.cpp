#include "charp/geometry.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

namespace charp {

namespace {

std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) tokens.push_back(line.substr(start, i - start));
    }
    return tokens;
}

std::uint64_t parse_keyed(std::string_view tok, std::string_view key, std::size_t lineno) {
    if (tok.size() <= key.size() + 1 || tok.substr(0, key.size()) != key ||
        tok[key.size()] != '=') {
        throw SyntaxError(lineno, 1, "expected '" + std::string(key) + "=<number>'");
    }
    std::string_view digits = tok.substr(key.size() + 1);
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
        throw SyntaxError(lineno, 1, "expected a number after '" + std::string(key) + "='");
    }
    return value;
}

std::uint64_t checked_power(std::uint64_t base, std::uint64_t exp, std::uint64_t cap) {
    std::uint64_t result = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (result > cap / base) return cap + 1;
        result *= base;
    }
    return result;
}

HurwitzPoint make_point(const PrimeField& field, std::uint32_t n, std::uint32_t m,
                        std::uint32_t precision, const std::vector<MultiIndex>& window,
                        const Vec& digits) {
    HurwitzPoint point;
    for (std::uint32_t j = 0; j < n; ++j) {
        HurwitzSeries s(field, m, precision);
        for (std::size_t c = 0; c < window.size(); ++c) {
            std::uint32_t v = digits[j * window.size() + c];
            if (v) s.set_coefficient(window[c], Fp(field, v));
        }
        point.coords.push_back(std::move(s));
    }
    return point;
}

}  // namespace

Vec HurwitzPoint::key() const {
    Vec out;
    for (const HurwitzSeries& s : coords) {
        for (const MultiIndex& idx : indices_up_to(s.arity(), s.precision())) {
            out.push_back(s.coefficient(idx).value());
        }
    }
    return out;
}

std::string HurwitzPoint::to_string() const {
    std::ostringstream out;
    out << "(";
    for (std::size_t j = 0; j < coords.size(); ++j) {
        if (j) out << " ;";
        out << " " << coords[j].coeffs_to_string();
    }
    out << " )";
    return out.str();
}

SolutionSet solve_system(const PrimeField& field, std::uint32_t n, std::uint32_t m,
                         const std::vector<DiffPolynomial>& system, std::uint32_t precision,
                         std::uint64_t bound, SolveStrategy strategy) {
    for (const DiffPolynomial& f : system) {
        if (f.field() != field || f.vars() != n || f.derivations() != m) {
            throw ShapeMismatchError("system polynomial does not match the declared shape");
        }
        if (f.order() > precision) {
            throw PrecisionExhaustedError("polynomial of order " + std::to_string(f.order()) +
                                          " cannot be evaluated at precision " +
                                          std::to_string(precision));
        }
    }
    const std::vector<MultiIndex> window = indices_up_to(m, precision);
    const std::size_t slots = static_cast<std::size_t>(n) * window.size();
    const std::uint64_t domain = checked_power(field.modulus(), slots, bound);
    if (domain > bound) {
        throw SearchSpaceTooLargeError("search space " + std::to_string(field.modulus()) + "^" +
                                       std::to_string(slots) + " exceeds the bound " +
                                       std::to_string(bound));
    }

    bool all_linear = true;
    for (const DiffPolynomial& f : system) {
        if (f.degree() > 1) all_linear = false;
    }
    if (strategy == SolveStrategy::linear && !all_linear) {
        throw ShapeMismatchError("linear strategy requires every polynomial to have degree <= 1");
    }
    const bool use_linear =
        strategy == SolveStrategy::linear || (strategy == SolveStrategy::automatic && all_linear);

    SolutionSet out;
    out.system = system;
    out.precision = precision;
    {
        std::ostringstream d;
        d << "p=" << field.modulus() << " m=" << m << " n=" << n << " N=" << precision
          << " space=" << field.modulus() << "^" << slots;
        out.search_domain = d.str();
    }

    auto slot_of = [&](std::uint32_t var, const MultiIndex& idx) {
        auto it = std::lower_bound(window.begin(), window.end(), idx);
        return (var - 1) * window.size() + static_cast<std::size_t>(it - window.begin());
    };

    if (use_linear) {
        out.used = SolveStrategy::linear;
        // One equation per (polynomial, index within its evaluation window).
        std::vector<std::size_t> eq_offsets;
        std::size_t total_eqs = 0;
        std::vector<std::vector<MultiIndex>> eq_windows;
        for (const DiffPolynomial& f : system) {
            eq_windows.push_back(indices_up_to(m, precision - f.order()));
            eq_offsets.push_back(total_eqs);
            total_eqs += eq_windows.back().size();
        }
        FpMat coeffs(field, slots, total_eqs);
        Vec rhs(total_eqs, 0);
        for (std::size_t fi = 0; fi < system.size(); ++fi) {
            const DiffPolynomial& f = system[fi];
            for (std::size_t ki = 0; ki < eq_windows[fi].size(); ++ki) {
                const MultiIndex& k = eq_windows[fi][ki];
                const std::size_t eq = eq_offsets[fi] + ki;
                for (const auto& [mono, c] : f.terms()) {
                    if (mono.is_constant()) {
                        if (k.is_zero()) {
                            rhs[eq] = (rhs[eq] + field.modulus() - c) % field.modulus();
                        }
                        continue;
                    }
                    const DerivVar& v = mono.factors().begin()->first;
                    std::size_t slot = slot_of(v.var, k.plus(v.theta));
                    coeffs.set(slot, eq, (coeffs.at(slot, eq) + c) % field.modulus());
                }
            }
        }
        std::optional<Vec> particular = solve_left(coeffs, rhs);
        if (particular) {
            FpMat homogeneous = nullspace(coeffs);
            const std::size_t nullity = homogeneous.rows();
            std::uint64_t count = checked_power(field.modulus(), nullity, bound);
            if (count > bound) {
                throw SearchSpaceTooLargeError("solution family exceeds the bound");
            }
            Vec mix(nullity, 0);
            while (true) {
                Vec digits = *particular;
                for (std::size_t i = 0; i < nullity; ++i) {
                    if (mix[i]) {
                        digits = vec_add(field, digits,
                                         vec_scale(field, homogeneous.row(i), mix[i]));
                    }
                }
                out.points.push_back(make_point(field, n, m, precision, window, digits));
                std::size_t k = nullity;
                while (k > 0 && mix[k - 1] == field.modulus() - 1) mix[--k] = 0;
                if (k == 0) break;
                ++mix[k - 1];
            }
        }
    } else {
        out.used = SolveStrategy::exhaustive;
        Vec digits(slots, 0);
        while (true) {
            HurwitzPoint point = make_point(field, n, m, precision, window, digits);
            bool zero = true;
            for (const DiffPolynomial& f : system) {
                if (!f.eval(point.coords).is_zero()) {
                    zero = false;
                    break;
                }
            }
            if (zero) out.points.push_back(std::move(point));
            std::size_t k = slots;
            while (k > 0 && digits[k - 1] == field.modulus() - 1) digits[--k] = 0;
            if (k == 0) break;
            ++digits[k - 1];
        }
    }

    std::sort(out.points.begin(), out.points.end(),
              [](const HurwitzPoint& a, const HurwitzPoint& b) { return a.key() < b.key(); });

    // For small domains the fast path is audited against plain enumeration.
    constexpr std::uint64_t kCrossCheckLimit = 1 << 12;
    if (strategy == SolveStrategy::automatic && out.used == SolveStrategy::linear &&
        domain <= kCrossCheckLimit) {
        SolutionSet audit =
            solve_system(field, n, m, system, precision, bound, SolveStrategy::exhaustive);
        bool same = audit.points.size() == out.points.size();
        for (std::size_t i = 0; same && i < audit.points.size(); ++i) {
            same = audit.points[i].key() == out.points[i].key();
        }
        if (!same) {
            throw CrossCheckError("linear solver disagrees with exhaustive enumeration");
        }
    }
    return out;
}

std::vector<DiffPolynomial> PolySpaceBasis::polynomials() const {
    std::vector<DiffPolynomial> out;
    for (std::size_t r = 0; r < coefficients.rows(); ++r) {
        DiffPolynomial f(field, n, m);
        for (std::size_t c = 0; c < monomials.size(); ++c) {
            std::uint32_t v = coefficients.at(r, c);
            if (v) f.add_term(monomials[c], Fp(field, v));
        }
        out.push_back(std::move(f));
    }
    return out;
}

bool PolySpaceBasis::contains(const DiffPolynomial& f) const {
    Vec coords(monomials.size(), 0);
    for (const auto& [mono, c] : f.terms()) {
        auto it = std::lower_bound(monomials.begin(), monomials.end(), mono);
        if (it == monomials.end() || !(*it == mono)) return false;
        coords[static_cast<std::size_t>(it - monomials.begin())] = c;
    }
    return in_row_space(coefficients, coords);
}

namespace {

std::vector<DiffMonomial> monomials_up_to(const std::vector<DerivVar>& variables,
                                          std::uint32_t degree_bound) {
    std::vector<DiffMonomial> out;
    DiffMonomial current;
    auto emit = [&](auto&& self, std::size_t from, std::uint32_t remaining) -> void {
        out.push_back(current);
        if (remaining == 0) return;
        for (std::size_t i = from; i < variables.size(); ++i) {
            DiffMonomial saved = current;
            current = current.times(variables[i]);
            self(self, i, remaining - 1);
            current = saved;
        }
    };
    emit(emit, 0, degree_bound);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

PolySpaceBasis vanishing_ideal(const PrimeField& field, std::uint32_t n, std::uint32_t m,
                               std::uint32_t precision, const std::vector<HurwitzPoint>& points,
                               std::uint32_t order_bound, std::uint32_t degree_bound,
                               std::uint64_t column_bound) {
    if (order_bound > precision) {
        throw PrecisionExhaustedError("order bound exceeds the available precision");
    }
    const std::uint32_t target = precision - order_bound;

    std::vector<DerivVar> variables;
    for (std::uint32_t j = 1; j <= n; ++j) {
        for (const MultiIndex& theta : indices_up_to(m, order_bound)) {
            variables.push_back(DerivVar{j, theta});
        }
    }
    // Count monomials of degree <= e over v variables: C(v + e, e).
    std::uint64_t count = 1;
    for (std::uint32_t i = 1; i <= degree_bound; ++i) {
        count = count * (variables.size() + i) / i;
        if (count > column_bound) {
            throw DimensionTooLargeError("monomial space exceeds the column bound");
        }
    }
    std::vector<DiffMonomial> monomials = monomials_up_to(variables, degree_bound);

    const std::vector<MultiIndex> eval_window = indices_up_to(m, target);
    FpMat evaluation(field, monomials.size(), points.size() * eval_window.size());
    for (std::size_t pi = 0; pi < points.size(); ++pi) {
        const HurwitzPoint& point = points[pi];
        if (point.coords.size() != n) throw ShapeMismatchError("point arity mismatch");
        for (std::size_t mi = 0; mi < monomials.size(); ++mi) {
            DiffPolynomial f = DiffPolynomial::monomial(field, n, m, monomials[mi]);
            HurwitzSeries value = f.eval(point.coords).truncated(target);
            for (std::size_t ki = 0; ki < eval_window.size(); ++ki) {
                evaluation.set(mi, pi * eval_window.size() + ki,
                               value.coefficient(eval_window[ki]).value());
            }
        }
    }

    PolySpaceBasis basis{field, n, m, std::move(monomials), nullspace(evaluation)};
    return basis;
}

PolySpaceBasis point_ideal(const HurwitzPoint& point, std::uint32_t order_bound,
                           std::uint32_t degree_bound, std::uint64_t column_bound) {
    if (point.coords.empty()) throw ShapeMismatchError("point has no coordinates");
    const HurwitzSeries& first = point.coords[0];
    return vanishing_ideal(first.field(), static_cast<std::uint32_t>(point.coords.size()),
                           static_cast<std::uint32_t>(first.arity()), first.precision(), {point},
                           order_bound, degree_bound, column_bound);
}

Report check_vanishing_inclusion(const PrimeField& field, std::uint32_t n, std::uint32_t m,
                                 const std::vector<DiffPolynomial>& generators,
                                 std::uint32_t precision, std::uint32_t order_bound,
                                 std::uint32_t degree_bound, std::uint64_t bound) {
    Report report;
    SolutionSet zeros = solve_system(field, n, m, generators, precision, bound);
    report.pass("inclusion.zero_set",
                "points=" + std::to_string(zeros.points.size()) +
                    (zeros.used == SolveStrategy::linear ? " strategy=linear"
                                                         : " strategy=exhaustive"));
    PolySpaceBasis ideal = vanishing_ideal(field, n, m, precision, zeros.points, order_bound,
                                           degree_bound);

    for (std::size_t gi = 0; gi < generators.size(); ++gi) {
        const DiffPolynomial& g = generators[gi];
        std::size_t checked = 0;
        bool ok = true;
        std::string witness;
        for (const MultiIndex& theta : indices_up_to(m, order_bound)) {
            DiffPolynomial word = g.apply_index(theta);
            if (word.is_zero()) continue;
            if (word.order() > order_bound || word.degree() > degree_bound) continue;
            for (const DiffMonomial& mono : ideal.monomials) {
                if (mono.degree() + word.degree() > degree_bound) continue;
                DiffPolynomial candidate =
                    word * DiffPolynomial::monomial(field, n, m, mono);
                if (candidate.is_zero()) continue;
                if (candidate.order() > order_bound || candidate.degree() > degree_bound) continue;
                ++checked;
                if (!ideal.contains(candidate)) {
                    ok = false;
                    witness = candidate.to_string();
                    break;
                }
            }
            if (!ok) break;
        }
        report.check("inclusion.generator_" + std::to_string(gi + 1), ok,
                     ok ? "checked=" + std::to_string(checked) : witness);
    }
    report.note("inclusion.equality", "UNVERIFIED",
                "one-sided certificate only; the reverse containment needs an uncountable"
                " algebraically closed residue field");
    return report;
}

RegularMap RegularMap::make(std::uint32_t source_vars, std::vector<DiffPolynomial> components) {
    if (components.empty()) throw ShapeMismatchError("a regular map needs components");
    for (const DiffPolynomial& f : components) {
        if (f.vars() != source_vars || f.field() != components[0].field() ||
            f.derivations() != components[0].derivations()) {
            throw ShapeMismatchError("map components must share the source ring");
        }
    }
    RegularMap map;
    map.source_vars = source_vars;
    map.target_vars = static_cast<std::uint32_t>(components.size());
    map.components = std::move(components);
    return map;
}

HurwitzPoint apply_map(const RegularMap& map, const HurwitzPoint& x) {
    if (x.coords.size() != map.source_vars) throw ShapeMismatchError("point arity mismatch");
    std::uint32_t max_order = 0;
    for (const DiffPolynomial& f : map.components) max_order = std::max(max_order, f.order());
    if (x.precision() < max_order) {
        throw PrecisionExhaustedError("map components need more precision than the point has");
    }
    const std::uint32_t target = x.precision() - max_order;
    HurwitzPoint out;
    for (const DiffPolynomial& f : map.components) {
        out.coords.push_back(f.eval(x.coords).truncated(target));
    }
    return out;
}

DiffPolynomial pullback(const RegularMap& map, const DiffPolynomial& g) {
    if (g.vars() != map.target_vars) {
        throw ShapeMismatchError("polynomial lives on a space of different dimension");
    }
    const PrimeField& field = map.components[0].field();
    const std::uint32_t n = map.source_vars;
    const std::uint32_t m = map.components[0].derivations();
    if (g.field() != field || g.derivations() != m) {
        throw ShapeMismatchError("polynomial and map have different ring data");
    }
    DiffPolynomial out(field, n, m);
    for (const auto& [mono, c] : g.terms()) {
        DiffPolynomial term = DiffPolynomial::constant(field, n, m,
                                                       static_cast<std::int64_t>(c));
        for (const auto& [v, e] : mono.factors()) {
            DiffPolynomial substituted = map.components[v.var - 1].apply_index(v.theta);
            term = term * substituted.pow(e);
        }
        out = out + term;
    }
    return out;
}

RegularMap compose(const RegularMap& first, const RegularMap& then) {
    if (then.source_vars != first.target_vars) {
        throw ShapeMismatchError("maps are not composable");
    }
    std::vector<DiffPolynomial> components;
    for (const DiffPolynomial& f : then.components) {
        components.push_back(pullback(first, f));
    }
    return RegularMap::make(first.source_vars, std::move(components));
}

std::vector<std::uint32_t> dimension_profile(const std::vector<DerivVar>& killed,
                                             std::uint32_t n, std::uint32_t m,
                                             std::uint32_t t_max) {
    std::set<DerivVar> killed_set;
    for (const DerivVar& v : killed) {
        if (v.var < 1 || v.var > n) throw ShapeMismatchError("killed variable out of range");
        if (v.theta.arity() != m) throw ShapeMismatchError("killed variable arity mismatch");
        if (v.theta.order() <= t_max) killed_set.insert(v);
    }
    for (const DerivVar& v : killed_set) {
        if (v.theta.order() >= t_max) continue;
        for (std::uint32_t t = 1; t <= m; ++t) {
            DerivVar up{v.var, v.theta.plus(MultiIndex::unit(m, t))};
            if (!killed_set.contains(up)) {
                throw NotDerivativeClosedError("killed set misses a derivative of y" +
                                               std::to_string(v.var));
            }
        }
    }
    std::vector<std::uint32_t> profile(t_max + 1, 0);
    for (std::uint32_t j = 1; j <= n; ++j) {
        for (const MultiIndex& theta : indices_up_to(m, t_max)) {
            if (killed_set.contains(DerivVar{j, theta})) continue;
            for (std::uint32_t t = theta.order(); t <= t_max; ++t) ++profile[t];
        }
    }
    return profile;
}

std::vector<DerivVar> derivative_closure_vars(const std::vector<DerivVar>& generators,
                                              std::uint32_t n, std::uint32_t m,
                                              std::uint32_t t_max) {
    std::set<DerivVar> closed;
    std::vector<DerivVar> frontier;
    for (const DerivVar& v : generators) {
        if (v.var < 1 || v.var > n) throw ShapeMismatchError("generator variable out of range");
        if (v.theta.arity() != m) throw ShapeMismatchError("generator arity mismatch");
        if (v.theta.order() <= t_max && closed.insert(v).second) frontier.push_back(v);
    }
    while (!frontier.empty()) {
        std::vector<DerivVar> next;
        for (const DerivVar& v : frontier) {
            if (v.theta.order() >= t_max) continue;
            for (std::uint32_t t = 1; t <= m; ++t) {
                DerivVar up{v.var, v.theta.plus(MultiIndex::unit(m, t))};
                if (closed.insert(up).second) next.push_back(up);
            }
        }
        frontier = std::move(next);
    }
    return std::vector<DerivVar>(closed.begin(), closed.end());
}

std::vector<std::uint32_t> dimension_profile_for_generators(
    const std::vector<DerivVar>& generators, std::uint32_t m, std::uint32_t t_max) {
    std::vector<std::uint32_t> profile(t_max + 1, 0);
    for (std::uint32_t t = 0; t <= t_max; ++t) {
        std::set<DerivVar> seen;
        for (const DerivVar& g : generators) {
            for (const MultiIndex& theta : indices_up_to(m, t)) {
                seen.insert(DerivVar{g.var, g.theta.plus(theta)});
            }
        }
        profile[t] = static_cast<std::uint32_t>(seen.size());
    }
    return profile;
}

DiffSystem parse_system_file(std::string_view text) {
    std::vector<std::pair<std::size_t, std::string_view>> lines;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        ++lineno;
        std::string_view line = text.substr(pos, end - pos);
        auto tokens = split_tokens(line);
        if (!tokens.empty() && !tokens[0].starts_with('#')) lines.emplace_back(lineno, line);
        if (end == text.size()) break;
        pos = end + 1;
    }
    if (lines.empty()) throw SyntaxError(1, 1, "empty system file");

    auto header_tokens = split_tokens(lines[0].second);
    if (header_tokens.size() != 4) {
        throw SyntaxError(lines[0].first, 1, "expected header 'p=.. m=.. n=.. N=..'");
    }
    std::uint64_t p = parse_keyed(header_tokens[0], "p", lines[0].first);
    std::uint64_t m = parse_keyed(header_tokens[1], "m", lines[0].first);
    std::uint64_t n = parse_keyed(header_tokens[2], "n", lines[0].first);
    std::uint64_t prec = parse_keyed(header_tokens[3], "N", lines[0].first);

    DiffSystem system{PrimeField(static_cast<std::uint32_t>(p)), static_cast<std::uint32_t>(n),
                      static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(prec), {}};
    for (std::size_t i = 1; i < lines.size(); ++i) {
        try {
            system.polynomials.push_back(DiffPolynomial::parse(lines[i].second, system.field,
                                                               system.n, system.m));
        } catch (const SyntaxError& e) {
            // Re-anchor the position to the file line.
            throw SyntaxError(lines[i].first, e.column(), e.detail());
        }
    }
    return system;
}

}  // namespace charp
