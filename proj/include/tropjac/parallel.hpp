// Deterministic parallel-for helper. Kernels write only to their own index slot,
// so results are identical for any thread count (merges happen in index order).
#pragma once

#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tropjac {

inline bool parallel_enabled() {
#ifdef _OPENMP
    const char* env = std::getenv("TROPJAC_SERIAL");
    return env == nullptr || env[0] == '0';
#else
    return false;
#endif
}

/** Runs fn(i) for i in [0,n). Parallel when OpenMP is available and not disabled
 *  via TROPJAC_SERIAL=1. fn must only touch state owned by index i. */
template <typename F>
void parallel_for(long n, F&& fn) {
#ifdef _OPENMP
    if (parallel_enabled()) {
#pragma omp parallel for schedule(dynamic, 16)
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
#endif
    for (long i = 0; i < n; ++i) fn(i);
}

} // namespace tropjac
