#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace roofkit {

// Static chunking over [0, count); results must land in preallocated,
// index-addressed storage so the output is identical for any thread count.
template <typename Fn>
void parallel_for(int count, int threads, Fn&& fn) {
  if (threads <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  const int workers = std::min(threads, count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&fn, w, workers, count] {
      for (int i = w; i < count; i += workers) fn(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

// --threads default: ROOFKIT_THREADS when set, else 1.
inline int default_thread_count() {
  if (const char* env = std::getenv("ROOFKIT_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

}  // namespace roofkit
