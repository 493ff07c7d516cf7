// Serial-vs-parallel comparison of the reduction kernels that dominate the
// verification suite: fixed-point histograms, direct frame-potential Gram
// passes, and twirl accumulation.
//
// Run: ./bench/qdv_bench [--benchmark_filter=...]

#include <benchmark/benchmark.h>

#include "qdv/clifford.hpp"
#include "qdv/designs.hpp"
#include "qdv/parallel.hpp"
#include "qdv/rng.hpp"
#include "qdv/symplectic.hpp"

namespace {

using namespace qdv;

const SymplecticSpace& space43() {
    static SymplecticSpace s(3, 2);
    return s;
}

const SpGroupTable& sp43() {
    static SpGroupTable table = sp_group(space43());
    return table;
}

const CliffordTable& clifford3() {
    static CliffordTable table = CliffordTable::enumerate(3, 1);
    return table;
}

const CliffordTable& clifford4() {
    static CliffordTable table = CliffordTable::enumerate(2, 2);
    return table;
}

// ---------------------------------------------------------------- fixed points

void BM_fixed_point_sum_serial(benchmark::State& state) {
    const auto& s = space43();
    const auto& els = sp43().elements();
    for (auto _ : state) {
        const std::uint64_t sum =
            serial_reduce(els.size(), std::uint64_t{0}, [&](std::uint64_t& acc, std::size_t i) {
                const std::uint64_t f = sp_fixed_points(s, els[i]);
                acc += f * f * f;
            });
        benchmark::DoNotOptimize(sum);
    }
}
BENCHMARK(BM_fixed_point_sum_serial);

void BM_fixed_point_sum_parallel(benchmark::State& state) {
    const auto& s = space43();
    const auto& els = sp43().elements();
    for (auto _ : state) {
        const std::uint64_t sum = chunked_reduce(
            els.size(), std::uint64_t{0},
            [&](std::uint64_t& acc, std::size_t i) {
                const std::uint64_t f = sp_fixed_points(s, els[i]);
                acc += f * f * f;
            },
            [](std::uint64_t& total, std::uint64_t part) { total += part; });
        benchmark::DoNotOptimize(sum);
    }
}
BENCHMARK(BM_fixed_point_sum_parallel);

// ---------------------------------------------------------------- direct gram

std::vector<cmat> gram_subset() {
    const auto& table = clifford4();
    std::vector<cmat> out;
    for (std::size_t i = 0; i < 2000; ++i) out.push_back(table.unitary(i));
    return out;
}

void BM_direct_potential_serial(benchmark::State& state) {
    static const std::vector<cmat> us = gram_subset();
    for (auto _ : state) {
        KahanSum sum;
        for (const cmat& a : us)
            for (const cmat& b : us) {
                const double ov = std::norm((a * b.adjoint()).trace());
                sum.add(ov * ov * ov);
            }
        benchmark::DoNotOptimize(sum.value());
    }
}
BENCHMARK(BM_direct_potential_serial);

void BM_direct_potential_parallel(benchmark::State& state) {
    static const std::vector<cmat> us = gram_subset();
    for (auto _ : state) {
        const double v = frame_potential_set(us, 3);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_direct_potential_parallel);

// ---------------------------------------------------------------- twirl

void BM_twirl_elementwise(benchmark::State& state) {
    Rng rng(1);
    const cmat a = rng.gaussian_matrix(27, 27);
    for (auto _ : state) {
        const cmat t = twirl(clifford3().unitaries(), 3, a);
        benchmark::DoNotOptimize(t.norm());
    }
}
BENCHMARK(BM_twirl_elementwise);

void BM_twirl_coset(benchmark::State& state) {
    Rng rng(1);
    const cmat a = rng.gaussian_matrix(27, 27);
    for (auto _ : state) {
        const cmat t = twirl_clifford(clifford3(), 3, a);
        benchmark::DoNotOptimize(t.norm());
    }
}
BENCHMARK(BM_twirl_coset);

}  // namespace

BENCHMARK_MAIN();
