#pragma once

#include <cstddef>
#include <functional>

namespace zerocert {

/// Worker count: ZEROCERT_THREADS when set (>= 1), else hardware concurrency.
unsigned thread_cap();

/// Runs body(i) for i in [0, n). Each index is handled exactly once; callers
/// write results into per-index slots so reductions stay order-deterministic.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace zerocert
