#pragma once

#include <cstddef>
#include <functional>

namespace heunwell {

/// Worker count: HEUNWELL_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
unsigned worker_count();

/// Calls body(i) for i in [0, n) on up to worker_count() threads. Each index
/// is visited exactly once; results written by index are order-independent.
/// The first exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace heunwell
