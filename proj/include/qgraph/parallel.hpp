#pragma once

// Data-parallel loop helper. Every kernel in the library takes an Exec and
// runs either the plain serial loop (the reference path used by the tests)
// or an OpenMP loop over the same body. Results are written by index, so both
// paths produce identical output regardless of scheduling.

#include <cstddef>
#include <exception>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qgraph {

enum class Backend { serial, openmp };

struct Exec {
    Backend backend = Backend::openmp;
    int jobs = 0; // 0: OpenMP default thread count

    static Exec serial() { return {Backend::serial, 1}; }
    static Exec openmp(int jobs = 0) { return {Backend::openmp, jobs}; }
};

inline int available_threads()
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

/// Calls body(i) for i in [0, n). Exceptions thrown by body are captured per
/// index and the one with the lowest index is rethrown after the loop.
template <typename Body>
void parallel_for(std::size_t n, const Exec& exec, Body&& body)
{
    if (exec.backend == Backend::serial || n < 2) {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }

    std::vector<std::exception_ptr> errors(n);
    const long long count = static_cast<long long>(n);
#ifdef _OPENMP
    const int threads = exec.jobs > 0 ? exec.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
#endif
    for (long long i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

} // namespace qgraph
