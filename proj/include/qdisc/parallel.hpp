#pragma once

// Thin OpenMP dispatch layer. Every parallel kernel in the library goes
// through these helpers so that a build without OpenMP degrades to the
// serial loop and results never depend on the thread count.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <numeric>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qdisc {

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void set_threads(int n) {
#ifdef _OPENMP
  omp_set_num_threads(n < 1 ? 1 : n);
#else
  (void)n;
#endif
}

// Restores the previous thread count on scope exit.
class ThreadScope {
 public:
  explicit ThreadScope(int n) : previous_(max_threads()) { set_threads(n); }
  ~ThreadScope() { set_threads(previous_); }
  ThreadScope(const ThreadScope&) = delete;
  ThreadScope& operator=(const ThreadScope&) = delete;

 private:
  int previous_;
};

// Runs f(i) for i in [0, n). The first exception thrown by any iteration is
// rethrown on the calling thread after the loop finishes.
template <typename F>
void parallel_for(std::size_t n, F&& f) {
  std::exception_ptr error;
#ifdef _OPENMP
  std::mutex guard;
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 1) if (n > 1 && !omp_in_parallel())
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      f(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(guard);
      if (!error) error = std::current_exception();
    }
  }
#else
  for (std::size_t i = 0; i < n; ++i) {
    try {
      f(i);
    } catch (...) {
      if (!error) error = std::current_exception();
    }
  }
#endif
  if (error) std::rethrow_exception(error);
}

// Sum of term(i) over [0, n) with a fixed block decomposition: partial sums
// per block are combined in block order, so the rounding is identical for
// any number of threads.
template <typename F>
double blocked_sum(std::size_t n, F&& term) {
  constexpr std::size_t kBlock = 4096;
  const std::size_t blocks = (n + kBlock - 1) / kBlock;
  std::vector<double> partial(blocks, 0.0);
  parallel_for(blocks, [&](std::size_t b) {
    const std::size_t end = std::min(n, (b + 1) * kBlock);
    double s = 0.0;
    for (std::size_t i = b * kBlock; i < end; ++i) s += term(i);
    partial[b] = s;
  });
  return std::accumulate(partial.begin(), partial.end(), 0.0);
}

}  // namespace qdisc
