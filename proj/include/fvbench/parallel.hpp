// Minimal static-partition parallel loop over index ranges.
#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace fvbench {

/// Worker count: FVBENCH_THREADS if set (>= 1), else hardware concurrency.
int thread_count();

/// Runs body(begin, end) over disjoint contiguous chunks of [0, n). The
/// partition depends only on n and the thread count, so results that are
/// written per index are deterministic. Rethrows the first worker exception.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace fvbench
