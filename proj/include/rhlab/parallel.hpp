#pragma once

#include <cstddef>
#include <functional>

namespace rhlab {

// Worker count: RHLAB_THREADS if set to a positive integer, otherwise the
// hardware concurrency (at least 1).
int thread_count();

// Calls body(i) for i in [0, n) on up to thread_count() threads, in
// contiguous chunks. Callers write results into per-index slots and reduce
// them afterwards in index order, so output never depends on the schedule.
// If several calls throw, the exception of the smallest index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace rhlab
