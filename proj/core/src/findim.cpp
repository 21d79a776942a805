#include "charp/findim.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace charp {

bool SubspaceIdeal::is_ideal(const DiffAlgebra& algebra) const {
    for (std::size_t r = 0; r < basis_.rows(); ++r) {
        Vec v = basis_.row(r);
        for (std::size_t i = 0; i < algebra.dim(); ++i) {
            if (!contains(algebra.mul(v, algebra.basis_vector(i)))) return false;
        }
    }
    return true;
}

bool SubspaceIdeal::is_derivation_stable(const DiffAlgebra& algebra) const {
    for (std::size_t r = 0; r < basis_.rows(); ++r) {
        Vec v = basis_.row(r);
        for (std::size_t t = 1; t <= algebra.num_derivations(); ++t) {
            if (!contains(algebra.derive(v, t))) return false;
        }
    }
    return true;
}

bool SubspaceIdeal::is_differential_ideal(const DiffAlgebra& algebra) const {
    return is_ideal(algebra) && is_derivation_stable(algebra);
}

DiffAlgebra::DiffAlgebra(const PrimeField& field, std::vector<std::string> basis_names,
                         std::vector<std::vector<Vec>> mul_table, std::vector<FpMat> derivations)
    : field_(field),
      dim_(basis_names.size()),
      m_(derivations.size()),
      basis_names_(std::move(basis_names)),
      unit_(),
      mul_table_(std::move(mul_table)),
      derivations_(std::move(derivations)) {
    if (dim_ == 0) throw ShapeMismatchError("algebra dimension must be positive");
    if (mul_table_.size() != dim_) throw ShapeMismatchError("multiplication table has wrong size");
    for (const auto& row : mul_table_) {
        if (row.size() != dim_) throw ShapeMismatchError("multiplication table has wrong size");
        for (const Vec& v : row) {
            if (v.size() != dim_) throw ShapeMismatchError("structure constants have wrong length");
        }
    }
    for (const FpMat& d : derivations_) {
        if (d.rows() != dim_ || d.cols() != dim_ || d.field() != field_) {
            throw ShapeMismatchError("derivation matrix has wrong shape");
        }
    }
    // Solve u * e_i = e_i for all i; the system is linear in u.
    FpMat system(field_, dim_, dim_ * dim_);
    Vec rhs(dim_ * dim_, 0);
    for (std::size_t j = 0; j < dim_; ++j) {
        for (std::size_t i = 0; i < dim_; ++i) {
            for (std::size_t k = 0; k < dim_; ++k) {
                system.set(j, i * dim_ + k, mul_table_[j][i][k]);
            }
        }
    }
    for (std::size_t i = 0; i < dim_; ++i) rhs[i * dim_ + i] = 1;
    std::optional<Vec> unit = solve_left(system, rhs);
    if (!unit) throw Error("multiplication table admits no unit element");
    unit_ = *unit;
}

Report DiffAlgebra::validate() const {
    Report report;
    auto witness = [&](std::initializer_list<std::size_t> idx) {
        std::string s = "at (";
        bool first = true;
        for (std::size_t i : idx) {
            if (!first) s += ",";
            first = false;
            s += std::to_string(i + 1);
        }
        return s + ")";
    };

    bool ok = true;
    for (std::size_t i = 0; i < dim_ && ok; ++i) {
        for (std::size_t j = i + 1; j < dim_ && ok; ++j) {
            if (mul_table_[i][j] != mul_table_[j][i]) {
                report.fail("algebra.commutative", witness({i, j}));
                ok = false;
            }
        }
    }
    if (ok) report.pass("algebra.commutative");

    ok = true;
    for (std::size_t i = 0; i < dim_ && ok; ++i) {
        for (std::size_t j = 0; j < dim_ && ok; ++j) {
            for (std::size_t k = 0; k < dim_ && ok; ++k) {
                Vec left = mul(mul_table_[i][j], basis_vector(k));
                Vec right = mul(basis_vector(i), mul_table_[j][k]);
                if (left != right) {
                    report.fail("algebra.associative", witness({i, j, k}));
                    ok = false;
                }
            }
        }
    }
    if (ok) report.pass("algebra.associative");

    ok = true;
    for (std::size_t i = 0; i < dim_ && ok; ++i) {
        if (mul(unit_, basis_vector(i)) != basis_vector(i)) {
            report.fail("algebra.unit", witness({i}));
            ok = false;
        }
    }
    if (ok) report.pass("algebra.unit");

    ok = true;
    for (std::size_t t = 1; t <= m_ && ok; ++t) {
        for (std::size_t i = 0; i < dim_ && ok; ++i) {
            for (std::size_t j = i; j < dim_ && ok; ++j) {
                Vec lhs = derive(mul_table_[i][j], t);
                Vec rhs = vec_add(field_, mul(derive(basis_vector(i), t), basis_vector(j)),
                                  mul(basis_vector(i), derive(basis_vector(j), t)));
                if (lhs != rhs) {
                    report.fail("algebra.leibniz", "D" + std::to_string(t) + " " + witness({i, j}));
                    ok = false;
                }
            }
        }
    }
    if (ok) report.pass("algebra.leibniz");

    ok = true;
    for (std::size_t s = 1; s <= m_ && ok; ++s) {
        for (std::size_t t = s + 1; t <= m_ && ok; ++t) {
            for (std::size_t i = 0; i < dim_ && ok; ++i) {
                Vec a = derive(derive(basis_vector(i), s), t);
                Vec b = derive(derive(basis_vector(i), t), s);
                if (a != b) {
                    report.fail("algebra.derivations_commute",
                                "D" + std::to_string(s) + ",D" + std::to_string(t) + " " +
                                    witness({i}));
                    ok = false;
                }
            }
        }
    }
    if (ok) report.pass("algebra.derivations_commute");

    return report;
}

Vec DiffAlgebra::basis_vector(std::size_t i) const {
    Vec v(dim_, 0);
    v[i] = 1;
    return v;
}

Vec DiffAlgebra::scalar(std::int64_t c) const {
    return vec_scale(field_, unit_, Fp(field_, c).value());
}

Vec DiffAlgebra::mul(const Vec& x, const Vec& y) const {
    if (x.size() != dim_ || y.size() != dim_) throw ShapeMismatchError("vector length mismatch");
    const std::uint64_t p = field_.modulus();
    Vec out(dim_, 0);
    for (std::size_t i = 0; i < dim_; ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < dim_; ++j) {
            if (y[j] == 0) continue;
            std::uint64_t c = static_cast<std::uint64_t>(x[i]) * y[j] % p;
            const Vec& base = mul_table_[i][j];
            for (std::size_t k = 0; k < dim_; ++k) {
                out[k] = static_cast<std::uint32_t>((out[k] + c * base[k]) % p);
            }
        }
    }
    return out;
}

Vec DiffAlgebra::pow(const Vec& x, std::uint64_t e) const {
    Vec result = unit_;
    Vec base = x;
    while (e) {
        if (e & 1) result = mul(result, base);
        e >>= 1;
        if (e) base = mul(base, base);
    }
    return result;
}

Vec DiffAlgebra::derive(const Vec& x, std::size_t t) const {
    if (t < 1 || t > m_) throw LengthMismatchError("derivation index out of range");
    return derivations_[t - 1].apply_row(x);
}

Vec DiffAlgebra::apply_index(const Vec& x, const MultiIndex& theta) const {
    if (theta.arity() != m_) throw LengthMismatchError("index arity mismatch");
    Vec out = x;
    for (std::size_t t = 1; t <= m_; ++t) {
        for (std::uint32_t k = 0; k < theta[t - 1]; ++k) out = derive(out, t);
    }
    return out;
}

bool DiffAlgebra::is_nilpotent(const Vec& x) const { return vec_is_zero(pow(x, dim_)); }

bool DiffAlgebra::is_diff_nilpotent(const Vec& x) const {
    if (!is_nilpotent(x)) return false;
    FpMat span_basis = FpMat::from_row(field_, x).row_basis();
    std::vector<Vec> frontier{x};
    while (!frontier.empty()) {
        std::vector<Vec> next;
        for (const Vec& v : frontier) {
            for (std::size_t t = 1; t <= m_; ++t) {
                Vec w = derive(v, t);
                if (in_row_space(span_basis, w)) continue;
                if (!is_nilpotent(w)) return false;
                span_basis = subspace_sum(span_basis, FpMat::from_row(field_, w));
                next.push_back(std::move(w));
            }
        }
        frontier = std::move(next);
    }
    return true;
}

SubspaceIdeal DiffAlgebra::zero_ideal() const { return SubspaceIdeal(FpMat(field_, 0, dim_)); }

SubspaceIdeal DiffAlgebra::whole_ideal() const {
    return SubspaceIdeal(FpMat::identity(field_, dim_));
}

SubspaceIdeal DiffAlgebra::span(const std::vector<Vec>& vectors) const {
    FpMat rows(field_, 0, dim_);
    for (const Vec& v : vectors) rows.append_row(v);
    return SubspaceIdeal(rows);
}

SubspaceIdeal DiffAlgebra::ideal_closure(const SubspaceIdeal& s) const {
    FpMat current = s.basis();
    while (true) {
        FpMat stacked = current;
        for (std::size_t r = 0; r < current.rows(); ++r) {
            Vec v = current.row(r);
            for (std::size_t i = 0; i < dim_; ++i) {
                stacked.append_row(mul(v, basis_vector(i)));
            }
        }
        FpMat reduced = stacked.row_basis();
        if (reduced == current) return SubspaceIdeal(current);
        current = reduced;
    }
}

SubspaceIdeal DiffAlgebra::differential_closure(const SubspaceIdeal& s) const {
    FpMat current = s.basis();
    while (true) {
        FpMat stacked = current;
        for (std::size_t r = 0; r < current.rows(); ++r) {
            Vec v = current.row(r);
            for (std::size_t i = 0; i < dim_; ++i) {
                stacked.append_row(mul(v, basis_vector(i)));
            }
            for (std::size_t t = 1; t <= m_; ++t) {
                stacked.append_row(derive(v, t));
            }
        }
        FpMat reduced = stacked.row_basis();
        if (reduced == current) return SubspaceIdeal(current);
        current = reduced;
    }
}

SubspaceIdeal DiffAlgebra::nilradical(std::uint64_t bound) const {
    std::vector<Vec> nil;
    for (const Vec& x : enumerate_vectors(field_, dim_, bound)) {
        if (is_nilpotent(x)) nil.push_back(x);
    }
    return span(nil);
}

SubspaceIdeal DiffAlgebra::radical(const SubspaceIdeal& a, std::uint64_t bound) const {
    if (!a.is_ideal(*this)) throw Error("radical requires an ideal");
    if (a.dim() == dim_) return a;
    AlgebraQuotient q = quotient_ring(a);
    FpMat rows = a.basis();
    for (const Vec& x : enumerate_vectors(field_, q.algebra.dim(), bound)) {
        if (q.algebra.is_nilpotent(x)) rows.append_row(q.lift.apply_row(x));
    }
    return SubspaceIdeal(rows);
}

namespace {

// Coordinates transverse to an RREF row space: x is in the row space iff
// x * coords == 0.
FpMat transverse_coords(const PrimeField& field, const FpMat& rref,
                        const std::vector<std::size_t>& pivots) {
    const std::size_t d = rref.cols();
    std::vector<bool> is_pivot(d, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<std::size_t> comp;
    for (std::size_t j = 0; j < d; ++j) {
        if (!is_pivot[j]) comp.push_back(j);
    }
    FpMat coords(field, d, comp.size());
    for (std::size_t j = 0; j < d; ++j) {
        Vec e(d, 0);
        e[j] = 1;
        Vec res = reduce_against(rref, pivots, e);
        for (std::size_t k = 0; k < comp.size(); ++k) coords.set(j, k, res[comp[k]]);
    }
    return coords;
}

}  // namespace

SubspaceIdeal DiffAlgebra::differential_core(const SubspaceIdeal& t) const {
    if (!t.is_ideal(*this)) throw Error("differential_core requires an ideal");
    FpMat current = t.basis();
    while (current.rows() > 0) {
        FpMat rref = current;
        std::vector<std::size_t> pivots = rref.reduce();
        FpMat coords = transverse_coords(field_, rref, pivots);
        const std::size_t r = current.rows();
        FpMat conditions(field_, r, m_ * coords.cols());
        for (std::size_t tt = 1; tt <= m_; ++tt) {
            FpMat derived = current * derivations_[tt - 1];
            FpMat proj = derived * coords;
            for (std::size_t i = 0; i < r; ++i) {
                for (std::size_t j = 0; j < proj.cols(); ++j) {
                    conditions.set(i, (tt - 1) * coords.cols() + j, proj.at(i, j));
                }
            }
        }
        FpMat kernel = nullspace(conditions);
        FpMat next(field_, 0, dim_);
        for (std::size_t i = 0; i < kernel.rows(); ++i) {
            next.append_row(current.apply_row(kernel.row(i)));
        }
        next = next.row_basis();
        if (next == current) break;
        current = next;
    }
    SubspaceIdeal result(current);
    if (!result.is_ideal(*this) || !result.is_derivation_stable(*this)) {
        throw CrossCheckError("differential_core fixed point is not a differential ideal");
    }
    return result;
}

SubspaceIdeal DiffAlgebra::quasiradical(const SubspaceIdeal& a, std::uint64_t bound) const {
    if (!a.is_differential_ideal(*this)) {
        throw NotDifferentialError("quasiradical requires a differential ideal");
    }
    SubspaceIdeal direct = [&] {
        if (a.dim() == dim_) return a;
        AlgebraQuotient q = quotient(a);
        FpMat rows = a.basis();
        for (const Vec& x : enumerate_vectors(field_, q.algebra.dim(), bound)) {
            if (q.algebra.is_diff_nilpotent(x)) rows.append_row(q.lift.apply_row(x));
        }
        return SubspaceIdeal(rows);
    }();
    SubspaceIdeal cross = differential_core(radical(a, bound));
    if (!(direct == cross)) {
        throw CrossCheckError(
            "quasiradical: differential nilpotents disagree with core of the radical");
    }
    return direct;
}

IdealClassification DiffAlgebra::classify(const SubspaceIdeal& q, std::uint64_t bound) const {
    if (!q.is_ideal(*this)) throw Error("classify requires an ideal");
    IdealClassification out;
    const bool differential = q.is_derivation_stable(*this);
    out.proper = q.dim() < dim_;
    if (!out.proper) {
        if (differential) {
            out.is_quasiradical = true;  // the zero quotient has no nonzero elements at all
            out.is_quasiprime = false;
            out.is_quasimaximal = false;
        }
        return out;
    }

    AlgebraQuotient ring = quotient_ring(q);
    const DiffAlgebra& R = ring.algebra;
    bool primary = true, prime = true, maximal = true;
    for (const Vec& x : enumerate_vectors(field_, R.dim(), bound)) {
        if (vec_is_zero(x)) continue;
        FpMat mx(field_, R.dim(), R.dim());
        for (std::size_t i = 0; i < R.dim(); ++i) {
            Vec row = R.mul(R.basis_vector(i), x);
            for (std::size_t j = 0; j < R.dim(); ++j) mx.set(i, j, row[j]);
        }
        if (mx.rank() < R.dim()) {
            prime = false;
            if (!R.is_nilpotent(x)) primary = false;
        }
        std::optional<Vec> y = solve_left(mx, R.unit());
        if (!y || R.mul(x, *y) != R.unit()) maximal = false;
    }
    out.is_primary = primary;
    out.is_prime = prime;
    out.is_maximal = maximal;

    if (differential) {
        AlgebraQuotient dq = quotient(q);
        bool quasiradical_flag = true;
        for (const Vec& x : enumerate_vectors(field_, dq.algebra.dim(), bound)) {
            if (!vec_is_zero(x) && dq.algebra.is_diff_nilpotent(x)) {
                quasiradical_flag = false;
                break;
            }
        }
        out.is_quasiradical = quasiradical_flag;
        out.is_quasiprime = quasiradical_flag && primary;

        bool quasimaximal_flag = true;
        for (const SubspaceIdeal& b : differential_ideals(bound)) {
            if (b.dim() == dim_ || b == q) continue;
            if (b.contains(q) && b.dim() > q.dim()) {
                quasimaximal_flag = false;
                break;
            }
        }
        out.is_quasimaximal = quasimaximal_flag;
    }
    return out;
}

std::vector<SubspaceIdeal> DiffAlgebra::differential_ideals(std::uint64_t bound) const {
    std::vector<SubspaceIdeal> out;
    for (const FpMat& s : enumerate_subspaces(field_, dim_, bound)) {
        SubspaceIdeal cand(s);
        if (cand.is_ideal(*this) && cand.is_derivation_stable(*this)) out.push_back(cand);
    }
    return out;
}

std::vector<SubspaceIdeal> DiffAlgebra::ring_ideals(std::uint64_t bound) const {
    std::vector<SubspaceIdeal> out;
    for (const FpMat& s : enumerate_subspaces(field_, dim_, bound)) {
        SubspaceIdeal cand(s);
        if (cand.is_ideal(*this)) out.push_back(cand);
    }
    return out;
}

bool DiffAlgebra::is_simple(std::uint64_t bound) const {
    return differential_ideals(bound).size() == 2;
}

DiffAlgebra::SimplicityInfo DiffAlgebra::simplicity_info(std::uint64_t bound) const {
    SimplicityInfo info;
    info.simple = is_simple(bound);
    if (!info.simple) return info;

    const std::uint32_t p = field_.modulus();
    std::vector<Vec> members;
    for (const Vec& x : enumerate_vectors(field_, dim_, bound)) {
        if (vec_is_zero(pow(x, p))) members.push_back(x);
    }
    SubspaceIdeal m = span(members);
    std::uint64_t span_size = 1;
    for (std::size_t i = 0; i < m.dim(); ++i) span_size *= p;
    info.verification.check("quasifield.pth_powers_form_subspace", members.size() == span_size);
    const bool ideal_ok = m.is_ideal(*this);
    info.verification.check("quasifield.maximal_ideal_is_ideal", ideal_ok);
    info.verification.check("quasifield.maximal_ideal_proper", m.dim() < dim_);
    bool residue_field = false;
    if (ideal_ok && m.dim() < dim_) residue_field = classify(m, bound).is_maximal;
    info.verification.check("quasifield.residue_is_field", residue_field);
    bool unique_max = true;
    std::string witness;
    for (const SubspaceIdeal& b : ring_ideals(bound)) {
        if (b.dim() == dim_) continue;
        if (!m.contains(b)) {
            unique_max = false;
            witness = "[" + b.basis().to_string() + "]";
            break;
        }
    }
    info.verification.check("quasifield.unique_maximal_ring_ideal", unique_max, witness);
    info.maximal_ideal = m;
    return info;
}

AlgebraQuotient DiffAlgebra::quotient_impl(const SubspaceIdeal& a,
                                                 bool keep_derivations) const {
    if (!a.is_ideal(*this)) throw Error("quotient requires an ideal");
    if (keep_derivations && !a.is_derivation_stable(*this)) {
        throw NotDifferentialError("derivations do not descend along a non-differential ideal");
    }
    if (a.dim() >= dim_) throw NotProperError("cannot form the quotient by the whole ring");

    FpMat rref = a.basis();
    FpMat tmp = rref;
    std::vector<std::size_t> pivots = tmp.reduce();
    FpMat to_coords = transverse_coords(field_, rref, pivots);
    const std::size_t d2 = to_coords.cols();

    std::vector<bool> is_pivot(dim_, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    FpMat lift(field_, d2, dim_);
    std::vector<std::string> names;
    std::size_t k = 0;
    for (std::size_t j = 0; j < dim_; ++j) {
        if (is_pivot[j]) continue;
        lift.set(k, j, 1);
        names.push_back(basis_names_[j]);
        ++k;
    }

    auto project = [&](const Vec& x) { return to_coords.apply_row(x); };

    std::vector<std::vector<Vec>> table(d2, std::vector<Vec>(d2));
    for (std::size_t i = 0; i < d2; ++i) {
        for (std::size_t j = 0; j < d2; ++j) {
            table[i][j] = project(mul(lift.row(i), lift.row(j)));
        }
    }
    std::vector<FpMat> derivs;
    if (keep_derivations) {
        for (std::size_t t = 1; t <= m_; ++t) {
            FpMat dmat(field_, d2, d2);
            for (std::size_t i = 0; i < d2; ++i) {
                Vec row = project(derive(lift.row(i), t));
                for (std::size_t j = 0; j < d2; ++j) dmat.set(i, j, row[j]);
            }
            derivs.push_back(std::move(dmat));
        }
    }
    DiffAlgebra q(field_, std::move(names), std::move(table), std::move(derivs));
    if (!q.validate().passed()) {
        throw CrossCheckError("quotient of a valid algebra failed validation");
    }
    return AlgebraQuotient{std::move(q), std::move(to_coords), std::move(lift)};
}

AlgebraQuotient DiffAlgebra::quotient(const SubspaceIdeal& a) const {
    return quotient_impl(a, true);
}

AlgebraQuotient DiffAlgebra::quotient_ring(const SubspaceIdeal& a) const {
    return quotient_impl(a, false);
}

DiffAlgebra DiffAlgebra::direct_product(const DiffAlgebra& a, const DiffAlgebra& b) {
    if (a.field_ != b.field_ || a.m_ != b.m_) {
        throw ShapeMismatchError("direct product requires matching field and derivation count");
    }
    const std::size_t d = a.dim_ + b.dim_;
    std::vector<std::string> names = a.basis_names_;
    names.insert(names.end(), b.basis_names_.begin(), b.basis_names_.end());

    auto embed_a = [&](const Vec& v) {
        Vec out(d, 0);
        std::copy(v.begin(), v.end(), out.begin());
        return out;
    };
    auto embed_b = [&](const Vec& v) {
        Vec out(d, 0);
        std::copy(v.begin(), v.end(), out.begin() + static_cast<std::ptrdiff_t>(a.dim_));
        return out;
    };

    std::vector<std::vector<Vec>> table(d, std::vector<Vec>(d, Vec(d, 0)));
    for (std::size_t i = 0; i < a.dim_; ++i) {
        for (std::size_t j = 0; j < a.dim_; ++j) table[i][j] = embed_a(a.mul_table_[i][j]);
    }
    for (std::size_t i = 0; i < b.dim_; ++i) {
        for (std::size_t j = 0; j < b.dim_; ++j) {
            table[a.dim_ + i][a.dim_ + j] = embed_b(b.mul_table_[i][j]);
        }
    }
    std::vector<FpMat> derivs;
    for (std::size_t t = 0; t < a.m_; ++t) {
        FpMat dmat(a.field_, d, d);
        for (std::size_t i = 0; i < a.dim_; ++i) {
            for (std::size_t j = 0; j < a.dim_; ++j) dmat.set(i, j, a.derivations_[t].at(i, j));
        }
        for (std::size_t i = 0; i < b.dim_; ++i) {
            for (std::size_t j = 0; j < b.dim_; ++j) {
                dmat.set(a.dim_ + i, a.dim_ + j, b.derivations_[t].at(i, j));
            }
        }
        derivs.push_back(std::move(dmat));
    }
    return DiffAlgebra(a.field_, std::move(names), std::move(table), std::move(derivs));
}

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

std::uint64_t parse_nat(std::string_view tok, std::size_t lineno, const std::string& what) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw SyntaxError(lineno, 1, "expected " + what + ", got '" + std::string(tok) + "'");
    }
    return value;
}

std::uint64_t parse_keyed(std::string_view tok, std::string_view key, std::size_t lineno) {
    if (tok.size() <= key.size() + 1 || tok.substr(0, key.size()) != key ||
        tok[key.size()] != '=') {
        throw SyntaxError(lineno, 1, "expected '" + std::string(key) + "=<number>'");
    }
    return parse_nat(tok.substr(key.size() + 1), lineno, std::string(key));
}

}  // namespace

DiffAlgebra DiffAlgebra::parse_file(std::string_view text) {
    std::vector<std::pair<std::size_t, std::vector<std::string_view>>> lines;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        ++lineno;
        std::string_view line = text.substr(pos, end - pos);
        auto tokens = split_tokens(line);
        if (!tokens.empty() && !tokens[0].starts_with('#')) lines.emplace_back(lineno, tokens);
        if (end == text.size()) break;
        pos = end + 1;
    }
    if (lines.empty()) throw SyntaxError(1, 1, "empty algebra file");

    // Header.
    auto& [hline, htok] = lines[0];
    if (htok.size() != 3) throw SyntaxError(hline, 1, "expected header 'p=.. dim=.. m=..'");
    std::uint64_t p = parse_keyed(htok[0], "p", hline);
    std::uint64_t d = parse_keyed(htok[1], "dim", hline);
    std::uint64_t m = parse_keyed(htok[2], "m", hline);
    if (d == 0) throw SyntaxError(hline, 1, "dimension must be positive");
    PrimeField field(static_cast<std::uint32_t>(p));
    const std::size_t dim = static_cast<std::size_t>(d);

    if (lines.size() < 2 || lines[1].second.empty() || lines[1].second[0] != "basis") {
        throw SyntaxError(lines.size() < 2 ? hline + 1 : lines[1].first, 1,
                          "expected 'basis <names>' line");
    }
    auto& [bline, btok] = lines[1];
    if (btok.size() != dim + 1) {
        throw SyntaxError(bline, 1, "basis line must list exactly dim names");
    }
    std::vector<std::string> names(btok.begin() + 1, btok.end());

    std::vector<std::vector<Vec>> table(dim, std::vector<Vec>(dim, Vec()));
    std::vector<std::vector<bool>> have_pair(dim, std::vector<bool>(dim, false));
    std::vector<FpMat> derivs(m, FpMat(field, dim, dim));
    std::vector<std::vector<bool>> have_deriv(m, std::vector<bool>(dim, false));

    auto parse_vec = [&](const std::vector<std::string_view>& toks, std::size_t from,
                         std::size_t lno) {
        if (toks.size() != from + dim) {
            throw SyntaxError(lno, 1, "expected exactly dim residues after '='");
        }
        Vec v(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            v[i] = static_cast<std::uint32_t>(parse_nat(toks[from + i], lno, "residue") %
                                              field.modulus());
        }
        return v;
    };

    for (std::size_t li = 2; li < lines.size(); ++li) {
        auto& [lno, tok] = lines[li];
        if (tok[0] == "mul") {
            if (tok.size() < 4 || tok[3] != "=") {
                throw SyntaxError(lno, 1, "expected 'mul <i> <j> = <residues>'");
            }
            std::uint64_t i = parse_nat(tok[1], lno, "basis index");
            std::uint64_t j = parse_nat(tok[2], lno, "basis index");
            if (i < 1 || i > dim || j < 1 || j > dim) {
                throw SyntaxError(lno, 1, "basis index out of range");
            }
            std::size_t a = static_cast<std::size_t>(std::min(i, j)) - 1;
            std::size_t b = static_cast<std::size_t>(std::max(i, j)) - 1;
            if (have_pair[a][b]) {
                throw SyntaxError(lno, 1, "duplicate mul entry for this pair");
            }
            Vec v = parse_vec(tok, 4, lno);
            table[a][b] = v;
            table[b][a] = v;
            have_pair[a][b] = true;
        } else if (tok[0].size() >= 2 && tok[0][0] == 'D') {
            std::uint64_t t = parse_nat(tok[0].substr(1), lno, "derivation index");
            if (t < 1 || t > m) throw SyntaxError(lno, 1, "derivation index out of range");
            if (tok.size() < 3 || tok[2] != "=") {
                throw SyntaxError(lno, 1, "expected 'D<t> <i> = <residues>'");
            }
            std::uint64_t i = parse_nat(tok[1], lno, "basis index");
            if (i < 1 || i > dim) throw SyntaxError(lno, 1, "basis index out of range");
            if (have_deriv[t - 1][i - 1]) {
                throw SyntaxError(lno, 1, "duplicate derivation entry");
            }
            Vec v = parse_vec(tok, 3, lno);
            for (std::size_t j = 0; j < dim; ++j) derivs[t - 1].set(i - 1, j, v[j]);
            have_deriv[t - 1][i - 1] = true;
        } else {
            throw SyntaxError(lno, 1, "unknown directive '" + std::string(tok[0]) + "'");
        }
    }

    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = i; j < dim; ++j) {
            if (!have_pair[i][j]) {
                throw SyntaxError(lineno, 1,
                                  "incomplete multiplication table: missing mul " +
                                      std::to_string(i + 1) + " " + std::to_string(j + 1));
            }
        }
    }
    for (std::size_t t = 0; t < m; ++t) {
        for (std::size_t i = 0; i < dim; ++i) {
            if (!have_deriv[t][i]) {
                throw SyntaxError(lineno, 1,
                                  "incomplete derivation table: missing D" + std::to_string(t + 1) +
                                      " " + std::to_string(i + 1));
            }
        }
    }
    return DiffAlgebra(field, std::move(names), std::move(table), std::move(derivs));
}

std::string DiffAlgebra::format_file() const {
    std::ostringstream out;
    out << "p=" << field_.modulus() << " dim=" << dim_ << " m=" << m_ << "\n";
    out << "basis";
    for (const std::string& n : basis_names_) out << " " << n;
    out << "\n";
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = i; j < dim_; ++j) {
            out << "mul " << (i + 1) << " " << (j + 1) << " =";
            for (std::uint32_t v : mul_table_[i][j]) out << " " << v;
            out << "\n";
        }
    }
    for (std::size_t t = 1; t <= m_; ++t) {
        for (std::size_t i = 0; i < dim_; ++i) {
            out << "D" << t << " " << (i + 1) << " =";
            for (std::size_t j = 0; j < dim_; ++j) out << " " << derivations_[t - 1].at(i, j);
            out << "\n";
        }
    }
    return out.str();
}

}  // namespace charp
