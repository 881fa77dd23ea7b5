#ifndef PERMCYCLES_DETAIL_PARALLEL_HPP
#define PERMCYCLES_DETAIL_PARALLEL_HPP

#include <cstddef>
#include <thread>
#include <vector>

namespace permcycles::detail {

inline unsigned effective_threads(unsigned requested) {
  if (requested != 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Runs fn(i) for i in [lo, hi) across threads. Each index is written by
/// exactly one thread, so results are deterministic regardless of the
/// thread count.
template <typename Fn>
void parallel_for(std::size_t lo, std::size_t hi, unsigned n_threads, Fn fn) {
  const std::size_t count = hi > lo ? hi - lo : 0;
  unsigned t = effective_threads(n_threads);
  if (t <= 1 || count < 2 * t) {
    for (std::size_t i = lo; i < hi; ++i) fn(i);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(t);
  const std::size_t chunk = (count + t - 1) / t;
  for (unsigned w = 0; w < t; ++w) {
    std::size_t a = lo + w * chunk;
    std::size_t b = std::min(hi, a + chunk);
    if (a >= b) break;
    workers.emplace_back([a, b, &fn] {
      for (std::size_t i = a; i < b; ++i) fn(i);
    });
  }
  for (auto& th : workers) th.join();
}

}  // namespace permcycles::detail

#endif  // PERMCYCLES_DETAIL_PARALLEL_HPP
