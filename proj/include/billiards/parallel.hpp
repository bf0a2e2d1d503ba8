#pragma once

#include <cstddef>
#include <functional>

namespace billiards {

// Worker count: hardware concurrency, capped by BILLIARD_BETA_THREADS.
unsigned worker_count();

// Runs body(i) for i in [0, n). Results must be written to per-index slots,
// so the outcome never depends on completion order. Calls made from inside
// a worker run serially.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace billiards
