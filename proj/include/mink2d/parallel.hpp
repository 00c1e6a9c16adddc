#pragma once

#include <cstddef>
#include <functional>

namespace mink2d {

/// Worker count: MINK2D_THREADS if set (>= 1), else hardware concurrency.
int max_threads();

/// Run body(i) for i in [0, n) on up to max_threads() threads. If bodies
/// throw, the exception of the lowest index is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace mink2d
