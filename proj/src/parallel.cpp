#include "sumsetlab/parallel.hpp"

#include <cstdlib>
#include <string>
#include <thread>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sumsetlab {

namespace {

int initial_limit()
{
    if (const char* env = std::getenv("SUMSETLAB_THREADS")) {
        try {
            const int v = std::stoi(env);
            if (v > 0) return v;
        } catch (const std::exception&) {
        }
    }
    const auto hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

int& limit()
{
    static int value = [] {
        const int v = initial_limit();
#ifdef _OPENMP
        omp_set_num_threads(v);
#endif
        return v;
    }();
    return value;
}

} // namespace

int thread_limit()
{
    return limit();
}

void set_thread_limit(int threads)
{
    limit() = threads > 0 ? threads : initial_limit();
#ifdef _OPENMP
    omp_set_num_threads(limit());
#endif
}

} // namespace sumsetlab
