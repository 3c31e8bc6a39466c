#include "solis/kernels/parallel.hpp"

#include <omp.h>

#include <atomic>
#include <cstdlib>

namespace solis::kernels {

namespace {

bool initial_state() {
    const char* env = std::getenv("SOLIS_SERIAL");
    return !(env != nullptr && env[0] != '\0' && env[0] != '0');
}

std::atomic<bool>& flag() {
    static std::atomic<bool> f{initial_state()};
    return f;
}

}  // namespace

bool parallel_enabled() { return flag().load(std::memory_order_relaxed); }

void set_parallel_enabled(bool on) { flag().store(on, std::memory_order_relaxed); }

int max_threads() { return omp_get_max_threads(); }

}  // namespace solis::kernels
