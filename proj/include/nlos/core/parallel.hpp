#pragma once
#include <cstddef>
#include <functional>

namespace nlos::core {

/// Number of worker threads: hardware concurrency, capped by the
/// NLOS_THREADS environment variable when set.
unsigned worker_count();

/// Runs fn(begin, end) over a static contiguous partition of [0, n).
/// Callers must write only to disjoint slots so results are identical for
/// any worker count. The first worker exception is rethrown after join.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)> &fn,
                  unsigned max_workers = 0);

} // namespace nlos::core
