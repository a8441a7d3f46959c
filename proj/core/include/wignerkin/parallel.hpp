#pragma once

#include <cstddef>
#include <functional>

namespace wignerkin {

// Global worker count for data-parallel loops. 0 or 1 means serial.
// Work is partitioned into fixed contiguous chunks, one per worker, and each
// output element is written by exactly one worker, so results are identical
// for any thread count.
void set_thread_count(int n);
int thread_count();

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace wignerkin
