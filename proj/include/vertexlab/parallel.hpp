#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace vertexlab {

inline int defaultJobs() {
  if (const char* env = std::getenv("VERTEXLAB_JOBS")) {
    int j = std::atoi(env);
    if (j > 0) return j;
  }
  return 1;
}

/// Evaluates fn(0..n-1) across `jobs` threads and combines results in index
/// order, so the reduction is deterministic regardless of thread count.
template <typename R>
R parallelMapReduce(size_t n, int jobs, const std::function<R(size_t)>& fn,
                    const std::function<R(R, R)>& combine, R init) {
  if (n == 0) return init;
  jobs = std::max(1, jobs);
  size_t nthreads = std::min<size_t>(jobs, n);
  if (nthreads <= 1) {
    R acc = std::move(init);
    for (size_t i = 0; i < n; ++i) acc = combine(std::move(acc), fn(i));
    return acc;
  }
  std::vector<R> results(n, init);
  std::vector<std::thread> pool;
  std::atomic<size_t> next{0};
  for (size_t t = 0; t < nthreads; ++t)
    pool.emplace_back([&] {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= n) break;
        results[i] = fn(i);
      }
    });
  for (auto& th : pool) th.join();
  R acc = std::move(init);
  for (size_t i = 0; i < n; ++i) acc = combine(std::move(acc), std::move(results[i]));
  return acc;
}

}  // namespace vertexlab
