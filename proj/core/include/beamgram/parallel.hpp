#pragma once

#include <cstddef>
#include <functional>

namespace beamgram {

/// Worker count: hardware concurrency, capped by BEAMGRAM_THREADS when set.
unsigned worker_count();

/// Calls body(i) for i in [0, n). Each index is processed exactly once;
/// callers write results into per-index slots so output order never depends
/// on scheduling. Exceptions from body are rethrown (the lowest index wins).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace beamgram
