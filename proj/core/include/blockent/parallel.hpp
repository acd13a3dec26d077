#pragma once

#include <functional>

namespace blockent {

// Worker count for data-parallel loops: BLOCKENT_THREADS when set (0 or unset
// means hardware concurrency), always at least 1.
int worker_count();

// Run fn(0..n-1) across workers. Results must be written to per-index
// storage; any reduction happens afterwards in index order, so the outcome is
// independent of scheduling. Nested calls run sequentially on the caller's
// thread rather than oversubscribing.
void parallel_for(long n, const std::function<void(long)>& fn);

}  // namespace blockent
