#pragma once
// Deterministic index-space parallelism: each index writes its own slot and
// reductions happen afterwards in index order, so thread count never changes
// results.  Thread count comes from the CCASC_THREADS environment variable
// (default: hardware concurrency).

#include <cstddef>
#include <functional>

namespace ccasc {

int thread_count();

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace ccasc
