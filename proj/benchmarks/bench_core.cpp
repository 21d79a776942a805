#include <benchmark/benchmark.h>

#include <random>

#include "charp/findim.hpp"
#include "charp/geometry.hpp"
#include "charp/hurwitz.hpp"
#include "charp/spectra.hpp"

using namespace charp;

namespace {

HurwitzSeries dense_series(const PrimeField& field, std::size_t m, std::uint32_t precision,
                           std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<std::uint32_t> dist(0, field.modulus() - 1);
    HurwitzSeries s(field, m, precision);
    for (const MultiIndex& idx : indices_up_to(m, precision)) {
        s.set_coefficient(idx, Fp(field, dist(rng)));
    }
    return s;
}

DiffAlgebra product_of_duals() {
    PrimeField f2(2);
    std::vector<std::vector<Vec>> table{{{1, 0}, {0, 1}}, {{0, 1}, {0, 0}}};
    FpMat d(f2, 2, 2);
    d.set(1, 0, 1);
    DiffAlgebra b2(f2, {"one", "eps"}, table, {d});
    return DiffAlgebra::direct_product(b2, b2);
}

void BM_series_mul(benchmark::State& state) {
    PrimeField f5(5);
    HurwitzSeries f = dense_series(f5, 2, 6, 1);
    HurwitzSeries g = dense_series(f5, 2, 6, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(f * g);
    }
}
BENCHMARK(BM_series_mul);

void BM_series_pth_power(benchmark::State& state) {
    PrimeField f3(3);
    HurwitzSeries f = dense_series(f3, 2, 6, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(f.pth_power());
    }
}
BENCHMARK(BM_series_pth_power);

void BM_differential_ideals(benchmark::State& state) {
    DiffAlgebra algebra = product_of_duals();
    for (auto _ : state) {
        benchmark::DoNotOptimize(algebra.differential_ideals());
    }
}
BENCHMARK(BM_differential_ideals);

void BM_quasiprime_spectrum(benchmark::State& state) {
    DiffAlgebra algebra = product_of_duals();
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_quasiprime_spectrum(algebra));
    }
}
BENCHMARK(BM_quasiprime_spectrum);

void BM_solve_linear(benchmark::State& state) {
    PrimeField f2(2);
    DiffPolynomial growth = DiffPolynomial::parse("D[1](y1) - y1", f2, 1, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            solve_system(f2, 1, 1, {growth}, static_cast<std::uint32_t>(state.range(0))));
    }
}
BENCHMARK(BM_solve_linear)->Arg(3)->Arg(6)->Arg(10);

void BM_solve_exhaustive(benchmark::State& state) {
    PrimeField f2(2);
    DiffPolynomial square = DiffPolynomial::parse("y1^2 - y1", f2, 1, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_system(f2, 1, 1, {square}, 3));
    }
}
BENCHMARK(BM_solve_exhaustive);

}  // namespace

BENCHMARK_MAIN();
