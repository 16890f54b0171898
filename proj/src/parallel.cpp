#include "ruq/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ruq::par {

namespace {

int detect_threads() {
#ifdef _OPENMP
    int n = omp_get_max_threads();
#else
    int n = 1;
#endif
    if (const char* env = std::getenv("RUQ_THREADS")) {
        try {
            int cap = std::stoi(env);
            if (cap >= 1 && cap < n) n = cap;
            if (cap >= 1 && n < 1) n = cap;
        } catch (...) {
            // Ignore unparseable values and keep the default.
        }
    }
    return n < 1 ? 1 : n;
}

}  // namespace

int thread_count() {
    static const int n = detect_threads();
    return n;
}

bool openmp_enabled() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

}  // namespace ruq::par
