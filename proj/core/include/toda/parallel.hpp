#pragma once

#include <cstddef>
#include <functional>

namespace toda {

/// Worker count: TODA_NUM_THREADS if set and positive, else hardware concurrency.
std::size_t thread_count();

/// Runs fn(0..count-1) on up to thread_count() threads. Indices are split into
/// contiguous blocks; results must be written to per-index slots so that the
/// outcome does not depend on scheduling. The first exception is rethrown.
/// Calls made from inside a worker run serially.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace toda
