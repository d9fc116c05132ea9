#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace jetlab {

// Thread cap: min(hardware, JETLAB_THREADS). Everything dispatched here is
// pure per-index work; callers combine results order-independently.
inline unsigned thread_cap() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("JETLAB_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(v));
  }
  return hw;
}

template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  unsigned workers = std::min<std::size_t>(thread_cap(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([=, &fn] {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace jetlab
