#pragma once

#include <cstddef>
#include <functional>

namespace radpulse {

// Worker count: hardware concurrency, capped by the RADPULSE_THREADS
// environment variable when it is set to a positive integer.
unsigned worker_count();

// Runs fn(begin, end) over a static partition of [0, n). Results must be
// written to disjoint, index-addressed storage so the outcome is
// independent of the partitioning. workers = 0 means worker_count().
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn,
                  unsigned workers = 0);

} // namespace radpulse
