#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sqsieve {

inline int default_workers() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

// Runs fn(i) for every i in [0, n) exactly once. Callers must write results
// to per-index slots; then the outcome is independent of the worker count.
template <typename Fn>
void parallel_for(std::int64_t n, int workers, Fn&& fn) {
  if (n <= 0) return;
  if (workers <= 1 || n == 1) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  int nthreads = static_cast<int>(std::min<std::int64_t>(workers, n));
  std::atomic<std::int64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(nthreads));
  for (int t = 0; t < nthreads; ++t) {
    pool.emplace_back([&] {
      try {
        for (;;) {
          std::int64_t i = next.fetch_add(1, std::memory_order_relaxed);
          if (i >= n) return;
          fn(i);
        }
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n, std::memory_order_relaxed);
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace sqsieve
