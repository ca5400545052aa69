#pragma once

#include <atomic>
#include <thread>
#include <vector>

namespace replidyn::detail {

inline int default_threads() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

// Runs fn(0..count-1) across threads. Callers keep determinism by writing
// only to their own per-index slots and reducing sequentially afterwards.
template <typename Fn>
void parallel_for(int count, int threads, Fn&& fn) {
  if (threads <= 0) threads = default_threads();
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (int k = 0; k < count; ++k) fn(k);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&next, count, &fn] {
      for (;;) {
        const int k = next.fetch_add(1);
        if (k >= count) return;
        fn(k);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace replidyn::detail
