#pragma once

#include <functional>

namespace speccomm {

// Worker count: SPECTRAL_COMM_THREADS if set (clamped to >= 1), else
// hardware concurrency.
int thread_count();

// Runs fn(i) for i in [0, n). Spawns threads only when thread_count() > 1
// and n > 1; fn must be safe to call concurrently. The first exception
// thrown by any task is rethrown after all workers join.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace speccomm
