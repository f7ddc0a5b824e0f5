#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace hexwell {

// Number of worker threads: HEXWELL_THREADS env var if set, else hardware.
inline int default_thread_count() {
  if (const char* env = std::getenv("HEXWELL_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Runs fn(i) for i in [0, n). Each index is processed exactly once; results
// must be written to per-index slots so the outcome is independent of the
// thread count.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                         int nthreads = 0) {
  if (nthreads <= 0) nthreads = default_thread_count();
  if (nthreads == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  int nt = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(nthreads), n));
  pool.reserve(nt);
  for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace hexwell
