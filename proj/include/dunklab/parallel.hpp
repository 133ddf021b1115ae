#pragma once

#include <cstddef>
#include <functional>

namespace dunklab {

// Global worker count for parallel_for (1 = serial).  Set once by the CLI.
void set_thread_count(int n);
int thread_count();

// Runs fn(i) for i in [0, n).  Work is handed out in fixed-size chunks and
// every result must be written to a caller-owned slot indexed by i, so the
// outcome is identical for any worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace dunklab
