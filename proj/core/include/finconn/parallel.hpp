#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace finconn {

inline unsigned& global_thread_count() {
  static unsigned n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

inline void set_thread_count(unsigned n) {
  global_thread_count() = std::max(1u, n);
}

// Splits [0, n) into fixed chunks, runs fn(chunk_index, begin, end) on a
// worker pool, and leaves per-chunk results to the caller. Chunk boundaries
// do not depend on the thread count, so reductions done in chunk order are
// bitwise reproducible for any --threads value.
template <typename Fn>
void parallel_chunks(std::uint64_t n, std::uint64_t chunk_size, Fn&& fn) {
  if (n == 0) return;
  std::uint64_t n_chunks = (n + chunk_size - 1) / chunk_size;
  unsigned n_threads =
      static_cast<unsigned>(std::min<std::uint64_t>(global_thread_count(),
                                                    n_chunks));
  if (n_threads <= 1) {
    for (std::uint64_t c = 0; c < n_chunks; ++c)
      fn(c, c * chunk_size, std::min(n, (c + 1) * chunk_size));
    return;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(n_threads);
  for (unsigned t = 0; t < n_threads; ++t) {
    workers.emplace_back([&, t]() {
      try {
        for (std::uint64_t c = t; c < n_chunks; c += n_threads)
          fn(c, c * chunk_size, std::min(n, (c + 1) * chunk_size));
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// Deterministic parallel sum over [0, n): partials are accumulated per chunk
// and combined in chunk order.
template <typename T, typename Fn>
T parallel_reduce(std::uint64_t n, std::uint64_t chunk_size, T init, Fn&& fn) {
  std::uint64_t n_chunks = (n + chunk_size - 1) / chunk_size;
  std::vector<T> partials(n_chunks, init);
  parallel_chunks(n, chunk_size,
                  [&](std::uint64_t c, std::uint64_t b, std::uint64_t e) {
                    partials[c] = fn(b, e);
                  });
  T total = init;
  for (const T& p : partials) total = total + p;
  return total;
}

}  // namespace finconn
