#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace rhilab {

/// Worker count: RHI_LAB_THREADS if set, else set_thread_count(), else hardware concurrency.
int thread_count();
void set_thread_count(int n);

/// Runs body(chunk, begin, end) over contiguous chunks of [0, n). The chunk layout
/// depends only on n and the worker count, and callers reduce per-chunk results in
/// chunk order, so results never depend on scheduling.
template <class Body>
std::size_t parallel_chunks(std::size_t n, Body&& body) {
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(thread_count(), n));
  const std::size_t per = (n + workers - 1) / std::max<std::size_t>(workers, 1);
  if (workers <= 1) {
    body(std::size_t{0}, std::size_t{0}, n);
    return 1;
  }
  std::vector<std::thread> pool;
  std::size_t chunks = 0;
  for (std::size_t begin = 0; begin < n; begin += per, ++chunks) {
    const std::size_t end = std::min(n, begin + per);
    pool.emplace_back([&body, chunks, begin, end] { body(chunks, begin, end); });
  }
  for (auto& t : pool) t.join();
  return chunks;
}

/// Number of chunks parallel_chunks will use for n items.
inline std::size_t chunk_count(std::size_t n) {
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(thread_count(), n));
  if (workers <= 1) return 1;
  const std::size_t per = (n + workers - 1) / workers;
  return (n + per - 1) / per;
}

}  // namespace rhilab
