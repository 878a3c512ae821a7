#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace twosize {

// Runs fn(i) for every i in [0,n). Work items must write only to
// caller-owned slots addressed by i, which makes the result independent of
// the worker count and of scheduling order. Exceptions are captured and the
// first one is rethrown on the calling thread.
inline void parallel_for_index(std::int64_t n, int workers,
                               const std::function<void(std::int64_t)>& fn) {
  if (n <= 0) return;
  if (workers < 1) workers = 1;
  const int nthreads =
      static_cast<int>(std::min<std::int64_t>(workers, n));
  if (nthreads == 1) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }

  std::mutex err_mutex;
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (int t = 0; t < nthreads; ++t) {
    const std::int64_t lo = n * t / nthreads;
    const std::int64_t hi = n * (t + 1) / nthreads;
    pool.emplace_back([&, lo, hi]() {
      try {
        for (std::int64_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

// Default worker count for embarrassingly parallel sweeps.
inline int default_workers() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace twosize
