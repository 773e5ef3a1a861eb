#ifndef TIEMB_PARALLEL_H_
#define TIEMB_PARALLEL_H_

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace tiemb {

// Runs fn(i) for i in [0, n) on up to `threads` workers. Each index is
// visited exactly once; callers write results to slot i so the output does
// not depend on scheduling. The first exception thrown by a worker is
// rethrown after all workers join.
template <typename Fn>
void ParallelFor(size_t n, int threads, Fn &&fn) {
  size_t workers = std::clamp<size_t>(threads < 1 ? 1 : threads, 1,
                                      std::max<size_t>(n, 1));
  if (workers == 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr error;
  std::mutex mu;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (size_t i = w; i < n; i += workers) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto &t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace tiemb

#endif  // TIEMB_PARALLEL_H_
