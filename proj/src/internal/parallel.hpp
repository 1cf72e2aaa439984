#pragma once

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

namespace codim1::detail {

// Global worker count for the builders. Results must not depend on it:
// only use parallel_for for loops whose iterations write disjoint slots.
int& thread_count();

// Static block partition of [0, n). fn(begin, end) per block.
void parallel_for(int n, const std::function<void(int, int)>& fn);

}  // namespace codim1::detail
