#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace experiment {

/// Runs f(0..count-1) on a few threads; results come back indexed by task,
/// so the output order never depends on scheduling.
template <class F>
auto parallel_map(std::int64_t count, F f, unsigned threads = 0) -> std::vector<decltype(f(std::int64_t{}))> {
  using R = decltype(f(std::int64_t{}));
  std::vector<R> out(static_cast<std::size_t>(std::max<std::int64_t>(count, 0)));
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::int64_t>(threads, std::max<std::int64_t>(count, 1)));
  std::atomic<std::int64_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  auto worker = [&](unsigned id) {
    try {
      for (std::int64_t i = next++; i < count; i = next++) out[static_cast<std::size_t>(i)] = f(i);
    } catch (...) {
      errors[id] = std::current_exception();
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace experiment
