#pragma once

#include <cstdint>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace pbsent {

/// Execution policy for the data-parallel kernels (QKD rounds, CHSH grid
/// scans, sampling histograms). The serial path is the reference
/// implementation; the parallel path must produce bit-identical results.
enum class Exec { serial, parallel };

inline int max_threads() {
#if defined(_OPENMP)
    return omp_get_max_threads();
#else
    return 1;
#endif
}

/// Runs fn(i) for i in [0, n). Iterations must be independent and write only
/// to per-index slots; any order-sensitive reduction happens afterwards, in
/// index order.
template <typename Fn>
void parallel_for(std::uint64_t n, Exec exec, Fn&& fn) {
    if (exec == Exec::parallel) {
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i)
            fn(static_cast<std::uint64_t>(i));
        return;
#endif
    }
    for (std::uint64_t i = 0; i < n; ++i) fn(i);
}

}  // namespace pbsent
