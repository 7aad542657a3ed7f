#ifndef FPP_PARALLEL_HPP
#define FPP_PARALLEL_HPP

#include <cstddef>
#include <exception>
#include <mutex>
#include <vector>

namespace fpp {

/// Worker count: FPP_THREADS when set (and positive), otherwise the OpenMP default.
int thread_count();

/// Overrides the worker count for the lifetime of the scope.
class ThreadScope {
public:
    explicit ThreadScope(int threads);
    ~ThreadScope();
    ThreadScope(const ThreadScope&) = delete;
    ThreadScope& operator=(const ThreadScope&) = delete;

private:
    int previous_;
};

namespace detail {
int& thread_override();
}

/// Calls body(r) for r in [0, count) across OpenMP threads. Results must be
/// written to slot r by the caller, so output never depends on scheduling.
/// The first exception thrown by any replica is rethrown after the loop.
template <typename Body>
void for_replicas(std::size_t count, Body&& body) {
    std::exception_ptr error;
    std::mutex error_mutex;
    const long n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic, 1) num_threads(thread_count())
    for (long r = 0; r < n; ++r) {
        try {
            body(static_cast<std::size_t>(r));
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
}

/// Serial reference for for_replicas.
template <typename Body>
void for_replicas_serial(std::size_t count, Body&& body) {
    for (std::size_t r = 0; r < count; ++r) body(r);
}

template <typename T, typename Body>
std::vector<T> map_replicas(std::size_t count, Body&& body, bool parallel = true) {
    std::vector<T> out(count);
    auto slot = [&](std::size_t r) { out[r] = body(r); };
    if (parallel)
        for_replicas(count, slot);
    else
        for_replicas_serial(count, slot);
    return out;
}

}  // namespace fpp

#endif
