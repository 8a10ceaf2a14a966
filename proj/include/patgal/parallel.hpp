#pragma once

#include <cstddef>
#include <functional>

namespace patgal {

/// Number of worker threads used by parallel_for (default 1).
void set_thread_count(int n);
int thread_count();

/// Splits [0, n) into contiguous chunks and runs body(begin, end) on each.
/// Chunk boundaries depend only on n and the thread count, so results are
/// reproducible as long as each index writes its own output.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace patgal
