#pragma once

#include <cstddef>
#include <functional>

namespace lqrf {

// Runs body(i) for i in [0, n) on a bounded set of worker threads.
// Each index is visited exactly once; results must be written to disjoint slots.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace lqrf
