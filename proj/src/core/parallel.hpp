#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace okkit {

// Worker count: OKKIT_THREADS caps hardware concurrency.
inline unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("OKKIT_THREADS")) {
    long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
  }
  return hw;
}

// Runs body(i) for i in [0, n); results must be written by index. The first
// exception is rethrown after all workers join.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  unsigned workers = std::min<std::size_t>(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex m;
  auto run = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(m);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace okkit
