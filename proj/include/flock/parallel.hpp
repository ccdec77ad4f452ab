#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <thread>
#include <utility>
#include <vector>

namespace flock {

// Worker-thread cap. FLOCK_THREADS (an integer >= 1) overrides the hardware
// default. The cap only bounds parallelism; results never depend on it.
inline int thread_cap() {
  if (const char* env = std::getenv("FLOCK_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) {
      return static_cast<int>(std::min(v, 1024L));
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Calls fn(i) for every i in [0, count), splitting the range into contiguous
// chunks across worker threads. Chunks are disjoint, so writes to per-index
// slots need no synchronization. Callers must keep fn free of cross-index
// data dependencies; any reduction happens after return, in index order, so
// the result is identical for every thread count. Ranges smaller than grain
// run inline on the calling thread.
template <typename F>
void parallel_for(std::int64_t count, std::int64_t grain, F&& fn) {
  if (count <= 0) return;
  if (grain < 1) grain = 1;
  const std::int64_t max_workers = (count + grain - 1) / grain;
  const int workers =
      static_cast<int>(std::min<std::int64_t>(thread_cap(), max_workers));
  if (workers <= 1) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }

  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      const std::int64_t lo = count * w / workers;
      const std::int64_t hi = count * (w + 1) / workers;
      try {
        for (std::int64_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
}

}  // namespace flock
