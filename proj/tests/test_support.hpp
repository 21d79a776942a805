#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "charp/findim.hpp"

namespace charp::test {

inline std::string fixture_path(const std::string& name) {
    return std::string(CHARP_FIXTURE_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline DiffAlgebra load_algebra(const std::string& name) {
    return DiffAlgebra::parse_file(read_file(fixture_path(name)));
}

/// Dual numbers over F_2 with the derivation sending eps to 1.
inline DiffAlgebra make_b2() {
    PrimeField f2(2);
    std::vector<std::vector<Vec>> table{{{1, 0}, {0, 1}}, {{0, 1}, {0, 0}}};
    FpMat d(f2, 2, 2);
    d.set(1, 0, 1);
    return DiffAlgebra(f2, {"one", "eps"}, table, {d});
}

/// Dual numbers over F_2 with the zero derivation.
inline DiffAlgebra make_dual_zero() {
    PrimeField f2(2);
    std::vector<std::vector<Vec>> table{{{1, 0}, {0, 1}}, {{0, 1}, {0, 0}}};
    return DiffAlgebra(f2, {"one", "eps"}, table, {FpMat(f2, 2, 2)});
}

/// The order-4 window of the shift-differential series algebra over F_2
/// (basis 1, d1, d2, d3; products d1*d2 = d3, every other product of the
/// nilpotents vanishes).
inline DiffAlgebra make_hf2_t4() {
    PrimeField f2(2);
    auto vec = [](std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) {
        return Vec{a, b, c, d};
    };
    std::vector<std::vector<Vec>> table(4, std::vector<Vec>(4, Vec(4, 0)));
    table[0][0] = vec(1, 0, 0, 0);
    table[0][1] = table[1][0] = vec(0, 1, 0, 0);
    table[0][2] = table[2][0] = vec(0, 0, 1, 0);
    table[0][3] = table[3][0] = vec(0, 0, 0, 1);
    table[1][2] = table[2][1] = vec(0, 0, 0, 1);
    FpMat d(f2, 4, 4);
    d.set(1, 0, 1);
    d.set(2, 1, 1);
    d.set(3, 2, 1);
    return DiffAlgebra(f2, {"one", "d1", "d2", "d3"}, table, {d});
}

/// The order-3 window of the shift-differential series algebra over F_3
/// (basis 1, d1, d2; d1*d1 = 2*d2, all other nilpotent products vanish).
inline DiffAlgebra make_hf3_t3() {
    PrimeField f3(3);
    std::vector<std::vector<Vec>> table(3, std::vector<Vec>(3, Vec(3, 0)));
    table[0][0] = Vec{1, 0, 0};
    table[0][1] = table[1][0] = Vec{0, 1, 0};
    table[0][2] = table[2][0] = Vec{0, 0, 1};
    table[1][1] = Vec{0, 0, 2};
    FpMat d(f3, 3, 3);
    d.set(1, 0, 1);
    d.set(2, 1, 1);
    return DiffAlgebra(f3, {"one", "d1", "d2"}, table, {d});
}

inline DiffAlgebra make_b2xb2() { return DiffAlgebra::direct_product(make_b2(), make_b2()); }

inline DiffAlgebra make_f3() {
    PrimeField f3(3);
    std::vector<std::vector<Vec>> table{{{1}}};
    return DiffAlgebra(f3, {"one"}, table, {FpMat(f3, 1, 1)});
}

}  // namespace charp::test
