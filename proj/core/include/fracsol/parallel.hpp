#pragma once

#include <cstddef>
#include <functional>

namespace fracsol {

/// Worker count: hardware concurrency, capped by the FRACSOL_THREADS
/// environment variable when it holds a positive integer.
unsigned worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads. If any call
/// throws, the exception from the lowest index is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace fracsol
