#pragma once

// Minimal parallel map.  Work items write to distinct slots, so the result
// never depends on the thread count.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace heisendyn {

namespace detail {
inline std::atomic<unsigned>& thread_setting() {
  static std::atomic<unsigned> n{0};
  return n;
}
}  // namespace detail

/// 0 means: HEISENDYN_THREADS if set, else the number of logical cores.
inline void set_threads(unsigned n) { detail::thread_setting() = n; }

inline unsigned thread_count() {
  unsigned n = detail::thread_setting();
  if (n == 0) {
    if (const char* env = std::getenv("HEISENDYN_THREADS")) n = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
  }
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

template <class F>
void parallel_for(std::size_t count, F&& fn) {
  const unsigned nt = static_cast<unsigned>(std::min<std::size_t>(thread_count(), count));
  if (nt <= 1) {
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
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace heisendyn
