#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rcpkit {

// 0 means "use the hardware concurrency".
inline unsigned resolve_threads(unsigned threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  return threads;
}

/// Runs body(chunk_begin, chunk_end, chunk_index) over [0, n) split into
/// contiguous chunks, one per worker. Chunk boundaries depend only on n and
/// the thread count, so a caller reducing per-chunk results in chunk order
/// gets the same answer as a serial loop. The first exception thrown by any
/// worker is rethrown on the calling thread.
template <class Body>
void parallel_chunks(std::size_t n, unsigned threads, Body&& body) {
  const std::size_t workers = std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    body(std::size_t{0}, n, std::size_t{0});
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr first;
  std::mutex mu;
  const std::size_t step = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = std::min(n, w * step);
    const std::size_t hi = std::min(n, lo + step);
    pool.emplace_back([&, lo, hi, w] {
      try {
        body(lo, hi, w);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!first) first = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first) std::rethrow_exception(first);
}

inline std::size_t chunk_count(std::size_t n, unsigned threads) {
  return std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(n, 1));
}

/// parallel_chunks with a per-index body.
template <class Body>
void parallel_for(std::size_t n, unsigned threads, Body&& body) {
  parallel_chunks(n, threads, [&](std::size_t lo, std::size_t hi, std::size_t) {
    for (std::size_t i = lo; i < hi; ++i) body(i);
  });
}

}  // namespace rcpkit
