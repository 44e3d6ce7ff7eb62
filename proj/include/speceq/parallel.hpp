#pragma once

#include <cstddef>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace speceq {

inline std::size_t worker_count() {
  if (const char* env = std::getenv("SPECEQ_THREADS")) {
    const long n = std::atol(env);
    if (n >= 1) return static_cast<std::size_t>(n);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

// Runs body(begin, end) over a partition of [0, n). Work items must be
// independent; results may not depend on the partition.
inline void parallel_for(std::size_t n,
                         const std::function<void(std::size_t, std::size_t)>& body) {
  const std::size_t workers = std::min(worker_count(), n ? n : std::size_t{1});
  if (workers <= 1) {
    body(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&body, begin, end] { body(begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace speceq
