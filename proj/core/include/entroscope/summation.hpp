#pragma once

#include <atomic>
#include <cstdlib>
#include <span>
#include <thread>
#include <vector>

namespace entroscope::detail {

// Pairwise (tree) reduction. The bracketing depends only on the element
// count, so the result is bit-identical for a given input vector.
inline double pairwise_sum(std::span<const double> v) {
  const std::size_t n = v.size();
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

inline std::size_t worker_count() {
  static const std::size_t cached = [] {
    if (const char* env = std::getenv("ENTROSCOPE_THREADS")) {
      const long v = std::strtol(env, nullptr, 10);
      if (v > 0) return static_cast<std::size_t>(v);
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return static_cast<std::size_t>(hc > 0 ? hc : 1);
  }();
  return cached;
}

// Evaluates `chunk_value(i)` for i in [0, n_chunks) and combines the results
// with a pairwise tree in chunk-index order. Chunk boundaries are fixed by
// the caller, so worker count affects scheduling only, never the bytes of
// the result.
template <class F>
double chunked_sum(std::size_t n_chunks, F&& chunk_value) {
  std::vector<double> partial(n_chunks, 0.0);
  const std::size_t workers = std::min(worker_count(), n_chunks);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n_chunks; ++i) partial[i] = chunk_value(i);
  } else {
    std::atomic<std::size_t> next{0};
    auto body = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n_chunks) return;
        partial[i] = chunk_value(i);
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
  }
  return pairwise_sum(partial);
}

// Same scheduling for filling an indexed result vector (parameter sweeps).
template <class F>
void parallel_index(std::size_t n, F&& fn) {
  const std::size_t workers = std::min(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(body);
  for (auto& th : pool) th.join();
}

}  // namespace entroscope::detail
