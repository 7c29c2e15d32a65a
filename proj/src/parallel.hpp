#pragma once

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace geocl {

inline unsigned worker_count() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("GEOCL_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && static_cast<unsigned long>(v) < hw) hw = static_cast<unsigned>(v);
  }
  return hw;
}

// Run fn(i) for i in [0, count) on up to worker_count() threads. fn must
// write only to its own output slot; iteration order is unspecified, so
// results must not depend on it.
template <typename Fn>
void parallel_for_index(std::size_t count, Fn&& fn) {
  const unsigned workers = static_cast<unsigned>(
      std::min<std::size_t>(worker_count(), count == 0 ? 1 : count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace geocl
