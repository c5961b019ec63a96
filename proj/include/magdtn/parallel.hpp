#ifndef MAGDTN_PARALLEL_HPP
#define MAGDTN_PARALLEL_HPP

// Deterministic parallel map: job i always lands in slot i, so results never
// depend on completion order or on the worker count.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace magdtn {

/// Worker count from MAGDTN_WORKERS, falling back to the hardware count.
inline int default_workers() {
  if (const char* env = std::getenv("MAGDTN_WORKERS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (...) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Evaluates f(0), ..., f(n-1). The first exception (lowest index) is
/// rethrown after all workers finish.
template <class F>
auto parallel_map(int n, F&& f, int workers = 0) -> std::vector<decltype(f(0))> {
  using T = decltype(f(0));
  std::vector<T> out(static_cast<size_t>(std::max(n, 0)));
  std::vector<std::exception_ptr> errors(out.size());
  if (workers <= 0) workers = default_workers();
  workers = std::min(workers, n);
  std::atomic<int> next{0};
  auto run = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        out[i] = f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace magdtn

#endif  // MAGDTN_PARALLEL_HPP
