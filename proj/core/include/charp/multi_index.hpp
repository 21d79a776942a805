#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "charp/errors.hpp"

namespace charp {

/// A derivative multi-index: one natural number per derivation. Ordered by
/// (total order, lexicographic), which is the canonical order used everywhere
/// for printing and map keys.
class MultiIndex {
public:
    /// The zero index in m coordinates (the identity derivative operator).
    explicit MultiIndex(std::size_t m) : coords_(m, 0) {}
    explicit MultiIndex(std::vector<std::uint32_t> coords) : coords_(std::move(coords)) {}
    MultiIndex(std::initializer_list<std::uint32_t> coords) : coords_(coords) {}

    /// e_t for a 1-based derivation index t.
    static MultiIndex unit(std::size_t m, std::size_t t) {
        if (t < 1 || t > m) throw LengthMismatchError("derivation index " + std::to_string(t) +
                                                      " out of [1," + std::to_string(m) + "]");
        MultiIndex idx(m);
        idx.coords_[t - 1] = 1;
        return idx;
    }

    std::size_t arity() const { return coords_.size(); }
    std::uint32_t operator[](std::size_t i) const { return coords_[i]; }
    const std::vector<std::uint32_t>& coords() const { return coords_; }

    std::uint32_t order() const {
        return std::accumulate(coords_.begin(), coords_.end(), std::uint32_t{0});
    }

    bool is_zero() const { return order() == 0; }

    MultiIndex plus(const MultiIndex& other) const {
        check_arity(other);
        MultiIndex r = *this;
        for (std::size_t i = 0; i < coords_.size(); ++i) r.coords_[i] += other.coords_[i];
        return r;
    }

    std::optional<MultiIndex> minus(const MultiIndex& other) const {
        check_arity(other);
        MultiIndex r = *this;
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            if (coords_[i] < other.coords_[i]) return std::nullopt;
            r.coords_[i] -= other.coords_[i];
        }
        return r;
    }

    bool dominates(const MultiIndex& other) const {
        check_arity(other);
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            if (coords_[i] < other.coords_[i]) return false;
        }
        return true;
    }

    friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
        return a.coords_ == b.coords_;
    }

    friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
        if (auto c = a.order() <=> b.order(); c != 0) return c;
        return a.coords_ <=> b.coords_;
    }

private:
    void check_arity(const MultiIndex& other) const {
        if (coords_.size() != other.coords_.size()) {
            throw LengthMismatchError("multi-indices of arity " + std::to_string(coords_.size()) +
                                      " and " + std::to_string(other.coords_.size()));
        }
    }

    std::vector<std::uint32_t> coords_;
};

/// All multi-indices of arity m with total order <= max_order, sorted.
inline std::vector<MultiIndex> indices_up_to(std::size_t m, std::uint32_t max_order) {
    std::vector<MultiIndex> out;
    std::vector<std::uint32_t> current(m, 0);
    // Enumerate compositions of each total order; the recursion emits
    // coordinates left to right, so each order block comes out lexicographic.
    auto emit = [&](auto&& self, std::size_t pos, std::uint32_t remaining) -> void {
        if (pos + 1 == m) {
            current[pos] = remaining;
            out.emplace_back(current);
            return;
        }
        for (std::uint32_t v = 0; v <= remaining; ++v) {
            current[pos] = v;
            self(self, pos + 1, remaining - v);
        }
    };
    for (std::uint32_t ord = 0; ord <= max_order; ++ord) {
        if (m == 0) {
            if (ord == 0) out.emplace_back(current);
            continue;
        }
        emit(emit, 0, ord);
    }
    return out;
}

}  // namespace charp
