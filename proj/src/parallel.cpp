#include "fpp/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace fpp {

namespace detail {
int& thread_override() {
    static int value = 0;
    return value;
}
}  // namespace detail

int thread_count() {
    if (detail::thread_override() > 0) return detail::thread_override();
    if (const char* env = std::getenv("FPP_THREADS")) {
        try {
            const int v = std::stoi(env);
            if (v > 0) return v;
        } catch (...) {
        }
    }
    return omp_get_max_threads();
}

ThreadScope::ThreadScope(int threads) : previous_(detail::thread_override()) { detail::thread_override() = threads; }

ThreadScope::~ThreadScope() { detail::thread_override() = previous_; }

}  // namespace fpp
