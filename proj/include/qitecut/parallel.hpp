#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qitecut {

inline int default_jobs() { return std::max(1, static_cast<int>(std::thread::hardware_concurrency())); }

/// Calls fn(i) for i in [0, count) on up to `jobs` threads. Callers write
/// results into slot i, so output order never depends on scheduling. The
/// first exception thrown by any task is rethrown after all workers join.
template <typename Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn) {
  const auto workers = static_cast<std::size_t>(std::max(1, jobs));
  if (workers == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);
      }
    }
  };
  std::vector<std::jthread> pool;
  for (std::size_t t = 0; t < std::min(workers, count); ++t) pool.emplace_back(worker);
  pool.clear();
  if (error) std::rethrow_exception(error);
}

}  // namespace qitecut
