#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace minteval {

// Runs fn(i) for i in [0, n). With jobs > 1, indices are striped across
// worker threads; fn must only write to per-index state. Results are
// independent of jobs because each index's work is self-contained.
inline void parallel_for(int jobs, size_t n, const std::function<void(size_t)>& fn) {
  if (jobs <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const size_t workers = std::min<size_t>(static_cast<size_t>(jobs), n);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (size_t w = 0; w < workers; ++w) {
    threads.emplace_back([w, workers, n, &fn]() {
      for (size_t i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& t : threads) t.join();
}

}  // namespace minteval
