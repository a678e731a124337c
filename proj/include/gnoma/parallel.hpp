// Deterministic work splitting. Results must never depend on the worker
// count, so work items are indexed and each item writes to its own slot;
// reductions happen after the join in index order.

#pragma once

#include <cstdint>
#include <span>
#include <thread>
#include <vector>

namespace gnoma {

// Worker count resolution: explicit value > 0 wins, otherwise the
// GOLAY_NOMA_WORKERS environment variable, otherwise hardware concurrency.
int resolve_workers(int requested);

// Calls fn(i) exactly once for every i in [0, n); contiguous blocks are
// handed to up to `workers` threads. fn must only touch state owned by
// item i (or otherwise commute exactly, e.g. integer tallies).
template <typename Fn>
void parallel_for(std::int64_t n, int workers, Fn&& fn) {
    if (n <= 0) return;
    if (workers <= 1 || n == 1) {
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const int nthreads = static_cast<int>(std::min<std::int64_t>(workers, n));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int w = 0; w < nthreads; ++w) {
        const std::int64_t lo = n * w / nthreads;
        const std::int64_t hi = n * (w + 1) / nthreads;
        pool.emplace_back([lo, hi, &fn] {
            for (std::int64_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

// Pairwise (cascade) summation; associativity-stable and independent of
// how the values were produced.
double pairwise_sum(std::span<const double> values);

}  // namespace gnoma
