#pragma once

#include <cstddef>
#include <functional>

namespace solenoid {

// Worker count: SOLENOID_THREADS if set and positive, else hardware concurrency.
unsigned thread_count();

// Calls body(begin, end) on disjoint contiguous chunks covering [0, n).
// Each index is written by exactly one chunk, so results do not depend on
// the number of threads.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace solenoid
