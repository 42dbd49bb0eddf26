#pragma once

#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace aircast {

// Run f(0) … f(n-1) on up to `threads` workers. Assignment is static
// (worker w takes indices w, w+threads, …) so where each result lands never
// depends on scheduling; callers write into index-addressed buffers and get
// identical output for any worker count. The first exception wins and is
// rethrown after all workers join.
inline void parallel_for(int n, int threads, const std::function<void(int)>& f) {
  if (threads < 1) threads = 1;
  if (threads == 1 || n <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  if (threads > n) threads = n;
  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::mutex error_mutex;
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int i = w; i < n; i += threads) f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace aircast
