#pragma once

// Deterministic parallel reduction kernels.
//
// Every hot sum in this library (frame potentials, fixed-point sums, twirl
// accumulations) goes through chunked_reduce: the index range is split into
// fixed-size chunks, each chunk is accumulated serially, and the chunk
// partials are combined in chunk order. The chunk layout never depends on
// the number of threads, so results are bit-identical whether the loop runs
// on one thread or many. serial_reduce is the plain left-fold reference the
// tests compare against.

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qdv {

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline void set_threads(int n) {
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

inline constexpr std::size_t kReduceChunk = 1024;

// accum(partial, i) folds item i into partial; combine(total, partial) merges
// one finished chunk. Both run in a fixed order.
template <class T, class AccumFn, class CombineFn>
T chunked_reduce(std::size_t n, T zero, AccumFn&& accum, CombineFn&& combine,
                 std::size_t chunk = kReduceChunk) {
    if (n == 0) return zero;
    const std::size_t nchunks = (n + chunk - 1) / chunk;
    std::vector<T> partials(nchunks, zero);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long long c = 0; c < static_cast<long long>(nchunks); ++c) {
        const std::size_t lo = static_cast<std::size_t>(c) * chunk;
        const std::size_t hi = lo + chunk < n ? lo + chunk : n;
        T& part = partials[static_cast<std::size_t>(c)];
        for (std::size_t i = lo; i < hi; ++i) accum(part, i);
    }
    T total = zero;
    for (std::size_t c = 0; c < nchunks; ++c) combine(total, partials[c]);
    return total;
}

// Reference implementation: single pass, no chunking.
template <class T, class AccumFn>
T serial_reduce(std::size_t n, T zero, AccumFn&& accum) {
    T total = zero;
    for (std::size_t i = 0; i < n; ++i) accum(total, i);
    return total;
}

// Kahan compensated accumulator for the floating-point sums.
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        const double y = x - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    // Merging another accumulator feeds its parts through the same
    // compensation path, keeping the merge order-sensitive but exact enough.
    void merge(const KahanSum& other) {
        add(other.sum);
        add(-other.comp);
    }
    double value() const { return sum; }
};

template <class TermFn>
double chunked_kahan_sum(std::size_t n, TermFn&& term) {
    KahanSum total = chunked_reduce(
        n, KahanSum{},
        [&](KahanSum& part, std::size_t i) { part.add(term(i)); },
        [](KahanSum& total_, const KahanSum& part) { total_.merge(part); });
    return total.value();
}

}  // namespace qdv
