#pragma once

#include <functional>

namespace gsctrack {

/// Number of worker threads for sequence-level parallelism: the hardware
/// concurrency, capped by the GSCTRACK_THREADS environment variable when set.
int worker_threads();

/// Runs fn(i) for i in [0, n). Work items must be independent; results keyed
/// by index stay deterministic regardless of schedule.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace gsctrack
