#pragma once

namespace solis::kernels {

// Global switch between the OpenMP kernels and their serial twins. The two
// paths produce bitwise-identical results (every output element is written
// by exactly one iteration and accumulated in the same order), so flipping
// the switch never changes numbers, only wall time. Default: parallel,
// unless the SOLIS_SERIAL environment variable is set to a nonzero value.
bool parallel_enabled();
void set_parallel_enabled(bool on);

int max_threads();

}  // namespace solis::kernels
