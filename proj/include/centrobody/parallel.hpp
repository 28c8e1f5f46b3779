#pragma once

#include <cstddef>
#include <functional>

namespace centrobody {

/// Worker count: hardware concurrency, capped by CENTROBODY_THREADS when set.
int thread_count();

/// Calls body(i) for i in [0, count) across thread_count() workers using
/// static contiguous blocks. Results written by index are independent of
/// the worker count. The first exception thrown by any call is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace centrobody
