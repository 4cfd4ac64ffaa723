#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace tridiag::detail {

// Runs body(i) for i in [0, count) on up to `threads` workers (0 = hardware
// concurrency). Each index is processed exactly once; results must be written
// to disjoint slots so the outcome is independent of scheduling.
template <typename F>
void parallel_for(std::size_t count, int threads, F&& body) {
  unsigned hw = std::thread::hardware_concurrency();
  std::size_t want = threads > 0 ? static_cast<std::size_t>(threads)
                                 : static_cast<std::size_t>(hw ? hw : 1);
  if (want > count) want = count ? count : 1;
  if (want <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(want);
  std::vector<std::thread> pool;
  pool.reserve(want);
  for (std::size_t w = 0; w < want; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (;;) {
          std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
          if (i >= count) break;
          body(i);
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace tridiag::detail
