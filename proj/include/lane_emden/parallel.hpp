#pragma once

#include <cstddef>
#include <functional>

namespace lane_emden {

// Data-parallelism cap. Defaults to the LANE_EMDEN_THREADS environment
// variable (1 if unset or invalid); can be overridden programmatically.
int max_threads();
void set_max_threads(int n);

// Runs fn(i) for i in [0, n). Splits into contiguous blocks over worker
// threads when max_threads() > 1; bodies must only write state owned by
// index i.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace lane_emden
