#pragma once

#include <cstddef>
#include <functional>

namespace capq {

// Upper bound on worker threads. Initialised from CAPQ_THREADS when set,
// otherwise from std::thread::hardware_concurrency().
int max_threads();
void set_max_threads(int threads);

// Runs body(begin_chunk, end_chunk) over contiguous, disjoint index ranges.
// Chunk boundaries depend only on `count` and the thread cap, so any body
// that writes only to its own range is deterministic.
void parallel_for(std::size_t count,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace capq
