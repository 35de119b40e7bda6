#pragma once

#include <cstddef>
#include <functional>

namespace zetagraph {

/// Worker cap from ZETAGRAPH_THREADS (unset or 0 means hardware concurrency).
std::size_t worker_count();

/// Calls task(i) for every i in [0, n), spread over worker_count() threads.
/// Callers write results into per-index slots and reduce them in index order,
/// so the outcome does not depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& task);

}  // namespace zetagraph
