#pragma once

#include <cstddef>
#include <functional>

namespace fracperim {

// Worker count: FRACPERIM_THREADS when set to a positive integer, else the hardware concurrency.
int thread_count();

// Runs body(i) for i in [0, count) on up to thread_count() threads; rethrows the first exception.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace fracperim
