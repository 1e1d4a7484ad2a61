#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace odris {

enum class Exec { Serial, Parallel };

/// Worker cap from the ODRIS_THREADS environment variable.
/// 0 (or unset, or unparsable) means "auto": leave the OpenMP default alone.
int env_thread_cap();

/// Reference loop. Kept separate from the parallel variant so tests and the
/// benchmark can compare the two directly.
template <typename F>
void for_each_index_serial(std::size_t n, F&& f) {
    for (std::size_t i = 0; i < n; ++i) f(i);
}

/// OpenMP loop over [0, n). `f` must be safe to call concurrently on
/// distinct indices; results must be written to disjoint slots so that the
/// outcome is identical to the serial loop.
template <typename F>
void for_each_index_parallel(std::size_t n, F&& f) {
#ifdef _OPENMP
    const int cap = env_thread_cap();
    const auto count = static_cast<std::int64_t>(n);
    if (cap > 0) {
#pragma omp parallel for schedule(static) num_threads(cap)
        for (std::int64_t i = 0; i < count; ++i) f(static_cast<std::size_t>(i));
    } else {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < count; ++i) f(static_cast<std::size_t>(i));
    }
#else
    for_each_index_serial(n, std::forward<F>(f));
#endif
}

template <typename F>
void for_each_index(std::size_t n, Exec exec, F&& f) {
    if (exec == Exec::Serial) {
        for_each_index_serial(n, std::forward<F>(f));
    } else {
        for_each_index_parallel(n, std::forward<F>(f));
    }
}

}  // namespace odris
