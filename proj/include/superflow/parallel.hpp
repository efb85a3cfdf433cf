#pragma once

#include <cstddef>
#include <functional>

namespace superflow {

// hardware_concurrency, capped by SUPERFLOW_THREADS when set.
int worker_count();

// Runs fn(i) for i in [0, n); indices are split into contiguous blocks per worker.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace superflow
