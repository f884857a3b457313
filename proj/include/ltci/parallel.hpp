#pragma once

#include <cstddef>
#include <functional>

namespace ltci {

// Resolve a thread-count request: n > 0 is taken as-is, n == 0 means the
// LTCI_THREADS environment variable if set, else hardware concurrency.
int resolve_threads(int requested);

// Static block partition of [0, count) over `threads` workers.
// Each index is processed exactly once by exactly one worker, so any
// per-index output slot is written race-free and schedule-independent.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

}  // namespace ltci
