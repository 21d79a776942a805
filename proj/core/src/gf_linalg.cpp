#include "charp/gf_linalg.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

namespace charp {

FpMat::FpMat(const PrimeField& field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

FpMat::FpMat(const PrimeField& field, std::vector<Vec> rows, std::size_t cols)
    : field_(field), rows_(rows.size()), cols_(cols), data_() {
    data_.reserve(rows_ * cols_);
    for (const Vec& r : rows) {
        if (r.size() != cols) throw ShapeMismatchError("row length does not match column count");
        for (std::uint32_t v : r) data_.push_back(v % field_.modulus());
    }
}

FpMat FpMat::identity(const PrimeField& field, std::size_t n) {
    FpMat m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

FpMat FpMat::from_row(const PrimeField& field, const Vec& row) {
    return FpMat(field, std::vector<Vec>{row}, row.size());
}

Vec FpMat::row(std::size_t i) const {
    return Vec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
               data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

void FpMat::append_row(const Vec& r) {
    if (r.size() != cols_) throw ShapeMismatchError("row length does not match column count");
    for (std::uint32_t v : r) data_.push_back(v % field_.modulus());
    ++rows_;
}

FpMat operator*(const FpMat& a, const FpMat& b) {
    if (a.field_ != b.field_ || a.cols_ != b.rows_) {
        throw ShapeMismatchError("matrix product shape mismatch");
    }
    const std::uint64_t p = a.field_.modulus();
    FpMat out(a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            std::uint64_t aik = a.at(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                std::uint64_t v = out.at(i, j) + aik * b.at(k, j) % p;
                out.set(i, j, static_cast<std::uint32_t>(v % p));
            }
        }
    }
    return out;
}

Vec FpMat::apply_row(const Vec& x) const {
    if (x.size() != rows_) throw ShapeMismatchError("vector length does not match row count");
    const std::uint64_t p = field_.modulus();
    Vec out(cols_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
        std::uint64_t xi = x[i];
        if (xi == 0) continue;
        for (std::size_t j = 0; j < cols_; ++j) {
            out[j] = static_cast<std::uint32_t>((out[j] + xi * at(i, j)) % p);
        }
    }
    return out;
}

std::vector<std::size_t> FpMat::reduce() {
    const std::uint64_t p = field_.modulus();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
        std::size_t pivot = r;
        while (pivot < rows_ && at(pivot, c) == 0) ++pivot;
        if (pivot == rows_) continue;
        if (pivot != r) {
            for (std::size_t j = 0; j < cols_; ++j) {
                std::swap(data_[r * cols_ + j], data_[pivot * cols_ + j]);
            }
        }
        std::uint64_t inv = Fp(field_, at(r, c)).inverse().value();
        for (std::size_t j = 0; j < cols_; ++j) {
            set(r, j, static_cast<std::uint32_t>(at(r, j) * inv % p));
        }
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == r || at(i, c) == 0) continue;
            std::uint64_t f = at(i, c);
            for (std::size_t j = 0; j < cols_; ++j) {
                std::uint64_t v = at(i, j) + (p - f) * at(r, j) % p;
                set(i, j, static_cast<std::uint32_t>(v % p));
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

FpMat FpMat::row_basis() const {
    FpMat m = *this;
    std::vector<std::size_t> pivots = m.reduce();
    FpMat out(field_, pivots.size(), cols_);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        for (std::size_t j = 0; j < cols_; ++j) out.set(i, j, m.at(i, j));
    }
    return out;
}

std::size_t FpMat::rank() const {
    FpMat m = *this;
    return m.reduce().size();
}

bool operator==(const FpMat& a, const FpMat& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::strong_ordering operator<=>(const FpMat& a, const FpMat& b) {
    if (auto c = a.rows_ <=> b.rows_; c != 0) return c;
    if (auto c = a.cols_ <=> b.cols_; c != 0) return c;
    return a.data_ <=> b.data_;
}

std::string FpMat::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < rows_; ++i) {
        if (i) out << '|';
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) out << ' ';
            out << at(i, j);
        }
    }
    return out.str();
}

Vec vec_add(const PrimeField& field, const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw ShapeMismatchError("vector lengths differ");
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::uint32_t s = a[i] + b[i];
        if (s >= field.modulus()) s -= field.modulus();
        out[i] = s;
    }
    return out;
}

Vec vec_sub(const PrimeField& field, const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw ShapeMismatchError("vector lengths differ");
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::uint32_t s = a[i] + field.modulus() - b[i];
        if (s >= field.modulus()) s -= field.modulus();
        out[i] = s;
    }
    return out;
}

Vec vec_scale(const PrimeField& field, const Vec& a, std::uint32_t c) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(a[i]) * c % field.modulus());
    }
    return out;
}

bool vec_is_zero(const Vec& a) {
    return std::all_of(a.begin(), a.end(), [](std::uint32_t v) { return v == 0; });
}

FpMat nullspace(const FpMat& m) {
    // x * m = 0 with x of size rows(); transpose so unknowns index columns.
    const PrimeField& field = m.field();
    const std::size_t n = m.rows();
    FpMat t(field, m.cols(), n);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) t.set(j, i, m.at(i, j));
    }
    std::vector<std::size_t> pivots = t.reduce();
    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    FpMat out(field, 0, n);
    const std::uint32_t p = field.modulus();
    for (std::size_t free_col = 0; free_col < n; ++free_col) {
        if (is_pivot[free_col]) continue;
        Vec x(n, 0);
        x[free_col] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            std::uint32_t v = t.at(r, free_col);
            if (v) x[pivots[r]] = p - v;
        }
        out.append_row(x);
    }
    return out.row_basis();
}

std::optional<Vec> solve_left(const FpMat& m, const Vec& b) {
    if (b.size() != m.cols()) throw ShapeMismatchError("rhs length does not match column count");
    const PrimeField& field = m.field();
    const std::size_t n = m.rows();
    // Augmented transposed system: columns of m are equations.
    FpMat t(field, m.cols(), n + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) t.set(j, i, m.at(i, j));
    }
    for (std::size_t j = 0; j < m.cols(); ++j) t.set(j, n, b[j]);
    std::vector<std::size_t> pivots = t.reduce();
    if (!pivots.empty() && pivots.back() == n) return std::nullopt;  // 0 = 1 row
    Vec x(n, 0);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = t.at(r, n);
    return x;
}

bool in_row_space(const FpMat& basis, const Vec& v) {
    FpMat b = basis;
    std::vector<std::size_t> pivots = b.reduce();
    return vec_is_zero(reduce_against(b, pivots, v));
}

Vec reduce_against(const FpMat& rref_basis, const std::vector<std::size_t>& pivots, const Vec& v) {
    const PrimeField& field = rref_basis.field();
    if (v.size() != rref_basis.cols()) throw ShapeMismatchError("vector length mismatch");
    Vec r = v;
    for (std::size_t k = 0; k < pivots.size(); ++k) {
        std::uint32_t c = r[pivots[k]];
        if (c == 0) continue;
        r = vec_sub(field, r, vec_scale(field, rref_basis.row(k), c));
    }
    return r;
}

FpMat subspace_sum(const FpMat& a, const FpMat& b) {
    if (a.field() != b.field() || a.cols() != b.cols()) {
        throw ShapeMismatchError("subspaces of different ambient spaces");
    }
    FpMat stacked = a;
    for (std::size_t i = 0; i < b.rows(); ++i) stacked.append_row(b.row(i));
    return stacked.row_basis();
}

FpMat subspace_intersection(const FpMat& a, const FpMat& b) {
    if (a.field() != b.field() || a.cols() != b.cols()) {
        throw ShapeMismatchError("subspaces of different ambient spaces");
    }
    const PrimeField& field = a.field();
    // x = u*a = v*b: solve (u, v) with u*a - v*b = 0 and read off u*a.
    const std::size_t ra = a.rows(), rb = b.rows();
    FpMat stacked(field, ra + rb, a.cols());
    for (std::size_t i = 0; i < ra; ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) stacked.set(i, j, a.at(i, j));
    }
    const std::uint32_t p = field.modulus();
    for (std::size_t i = 0; i < rb; ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            std::uint32_t v = b.at(i, j);
            stacked.set(ra + i, j, v == 0 ? 0 : p - v);
        }
    }
    FpMat kernel = nullspace(stacked);
    FpMat out(field, 0, a.cols());
    for (std::size_t i = 0; i < kernel.rows(); ++i) {
        Vec uv = kernel.row(i);
        Vec u(uv.begin(), uv.begin() + static_cast<std::ptrdiff_t>(ra));
        out.append_row(a.apply_row(u));
    }
    return out.row_basis();
}

bool subspace_contains(const FpMat& outer, const FpMat& inner) {
    FpMat b = outer;
    std::vector<std::size_t> pivots = b.reduce();
    for (std::size_t i = 0; i < inner.rows(); ++i) {
        if (!vec_is_zero(reduce_against(b, pivots, inner.row(i)))) return false;
    }
    return true;
}

std::uint64_t count_subspaces(std::uint64_t q, std::size_t d, std::uint64_t cap) {
    // Sum of Gaussian binomials [d choose r]_q, computed with capping so the
    // arithmetic cannot overflow.
    long double total = 0;
    for (std::size_t r = 0; r <= d; ++r) {
        long double value = 1;
        for (std::size_t i = 0; i < r; ++i) {
            long double num = std::pow(static_cast<long double>(q), static_cast<int>(d - i)) - 1;
            long double den = std::pow(static_cast<long double>(q), static_cast<int>(i + 1)) - 1;
            value *= num / den;
        }
        total += value;
        if (total > static_cast<long double>(cap)) return cap + 1;
    }
    return static_cast<std::uint64_t>(total + 0.5L);
}

namespace {

// Enumerate RREF matrices of rank r with the given pivot columns by running an
// odometer over the free entries.
void enumerate_rref_with_pivots(const PrimeField& field, std::size_t d,
                                const std::vector<std::size_t>& pivots,
                                std::vector<FpMat>& out) {
    const std::size_t r = pivots.size();
    std::vector<bool> is_pivot(d, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<std::pair<std::size_t, std::size_t>> free_cells;
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = pivots[i] + 1; j < d; ++j) {
            if (!is_pivot[j]) free_cells.emplace_back(i, j);
        }
    }
    const std::uint32_t q = field.modulus();
    std::vector<std::uint32_t> digits(free_cells.size(), 0);
    while (true) {
        FpMat m(field, r, d);
        for (std::size_t i = 0; i < r; ++i) m.set(i, pivots[i], 1);
        for (std::size_t k = 0; k < free_cells.size(); ++k) {
            m.set(free_cells[k].first, free_cells[k].second, digits[k]);
        }
        out.push_back(std::move(m));
        std::size_t k = digits.size();
        while (k > 0 && digits[k - 1] == q - 1) digits[--k] = 0;
        if (k == 0) break;
        ++digits[k - 1];
    }
}

void pivot_combinations(std::size_t d, std::size_t r, std::vector<std::size_t>& current,
                        std::size_t start, const PrimeField& field, std::vector<FpMat>& out) {
    if (current.size() == r) {
        enumerate_rref_with_pivots(field, d, current, out);
        return;
    }
    for (std::size_t c = start; c < d; ++c) {
        current.push_back(c);
        pivot_combinations(d, r, current, c + 1, field, out);
        current.pop_back();
    }
}

}  // namespace

std::vector<FpMat> enumerate_subspaces(const PrimeField& field, std::size_t d,
                                       std::uint64_t bound) {
    if (count_subspaces(field.modulus(), d, bound) > bound) {
        throw EnumerationTooLargeError("subspace lattice of F_" +
                                       std::to_string(field.modulus()) + "^" + std::to_string(d) +
                                       " exceeds the enumeration bound");
    }
    std::vector<FpMat> out;
    for (std::size_t r = 0; r <= d; ++r) {
        std::vector<FpMat> level;
        std::vector<std::size_t> current;
        pivot_combinations(d, r, current, 0, field, level);
        std::sort(level.begin(), level.end());
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

std::vector<Vec> enumerate_vectors(const PrimeField& field, std::size_t d, std::uint64_t bound) {
    const std::uint32_t q = field.modulus();
    long double size = std::pow(static_cast<long double>(q), static_cast<int>(d));
    if (size > static_cast<long double>(bound)) {
        throw EnumerationTooLargeError("element space F_" + std::to_string(q) + "^" +
                                       std::to_string(d) + " exceeds the enumeration bound");
    }
    std::vector<Vec> out;
    out.reserve(static_cast<std::size_t>(size));
    Vec current(d, 0);
    while (true) {
        out.push_back(current);
        std::size_t k = d;
        while (k > 0 && current[k - 1] == q - 1) current[--k] = 0;
        if (k == 0) break;
        ++current[k - 1];
    }
    return out;
}

}  // namespace charp
