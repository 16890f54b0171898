#ifndef RUQ_PARALLEL_HPP
#define RUQ_PARALLEL_HPP

#include <cstddef>
#include <vector>

namespace ruq {

// Execution policy for the enumeration kernels. Every parallel kernel has a
// straightforward serial twin; tests assert the two produce identical values,
// and tools/bench.cpp compares their throughput.
enum class Exec { serial, parallel };

namespace par {

// Number of worker threads: min(RUQ_THREADS, hardware) when the environment
// variable is set, otherwise the OpenMP default. Always >= 1.
int thread_count();

bool openmp_enabled();

// parallel for over [0, n). The body must be independent per index.
template <class F>
void for_each_index(std::size_t n, F&& body);

// policy-dispatching variant of for_each_index.
template <class F>
void for_each(Exec exec, std::size_t n, F&& body);

// Deterministic sum of f(0..n-1): values are materialized (in parallel when
// requested) and folded in index order, so the result is bit-identical for
// every thread count.
template <class F>
double map_sum(Exec exec, std::size_t n, F&& f);

// Deterministic max fold; returns -inf for n == 0.
template <class F>
double map_max(Exec exec, std::size_t n, F&& f);

}  // namespace par
}  // namespace ruq

// ---- implementation ----

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <limits>

namespace ruq::par {

template <class F>
void for_each_index(std::size_t n, F&& body) {
#ifdef _OPENMP
    const int threads = thread_count();
    // Dynamic chunks: several callers have strongly uneven per-index cost
    // (triangular pair scans, rate grids straddling a piecewise breakpoint).
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        body(static_cast<std::size_t>(i));
    }
#else
    for (std::size_t i = 0; i < n; ++i) body(i);
#endif
}

template <class F>
void for_each(Exec exec, std::size_t n, F&& body) {
    if (exec == Exec::parallel) {
        for_each_index(n, body);
    } else {
        for (std::size_t i = 0; i < n; ++i) body(i);
    }
}

template <class F>
double map_sum(Exec exec, std::size_t n, F&& f) {
    if (exec == Exec::serial || n < 256 || thread_count() == 1) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += f(i);
        return acc;
    }
    std::vector<double> buf(n);
    for_each_index(n, [&](std::size_t i) { buf[i] = f(i); });
    double acc = 0.0;
    for (double v : buf) acc += v;
    return acc;
}

template <class F>
double map_max(Exec exec, std::size_t n, F&& f) {
    if (exec == Exec::serial || n < 256 || thread_count() == 1) {
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) best = std::max(best, f(i));
        return best;
    }
    std::vector<double> buf(n);
    for_each_index(n, [&](std::size_t i) { buf[i] = f(i); });
    double best = -std::numeric_limits<double>::infinity();
    for (double v : buf) best = std::max(best, v);
    return best;
}

}  // namespace ruq::par

#endif
