#include "patgal/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace patgal {
namespace {
std::atomic<int> g_threads{1};
}

void set_thread_count(int n) { g_threads = std::max(1, n); }

int thread_count() { return g_threads; }

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(g_threads), n);
  if (workers <= 1) {
    if (n > 0) body(0, n);
    return;
  }
  const std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&body, begin, end] { body(begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace patgal
