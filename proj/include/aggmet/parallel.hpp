#pragma once

#include <cstddef>

namespace aggmet {

// Runtime switch between the OpenMP kernels and the serial reference path.
// Every parallel loop writes to disjoint slots, so both paths produce
// bit-identical results; tests compare them directly.
bool parallel_enabled();
void set_parallel_enabled(bool on);

template <class F>
void parallel_for(std::size_t n, F&& body) {
#ifdef _OPENMP
    if (parallel_enabled() && n > 1) {
#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < static_cast<long long>(n); ++i) {
            body(static_cast<std::size_t>(i));
        }
        return;
    }
#endif
    for (std::size_t i = 0; i < n; ++i) {
        body(i);
    }
}

}  // namespace aggmet
