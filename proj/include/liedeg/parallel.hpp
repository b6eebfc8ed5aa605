#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace liedeg {

/// Worker count: LIEDEG_THREADS if set (>= 1), else hardware concurrency.
unsigned thread_count();

/// Runs body(chunk_index, begin, end) for fixed-size chunks of [0, n).
/// Chunk boundaries depend only on n and chunk_size, never on the thread
/// count, so per-chunk results combined in index order are reproducible.
void parallel_chunks(std::size_t n, std::size_t chunk_size,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

std::size_t chunk_count(std::size_t n, std::size_t chunk_size);

/// Pairwise (tree-ordered) sum of per-chunk partials.
template <class T>
T tree_reduce(std::vector<T> parts, const T& zero) {
  if (parts.empty()) return zero;
  while (parts.size() > 1) {
    std::vector<T> next;
    next.reserve((parts.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < parts.size(); i += 2) next.push_back(parts[i] + parts[i + 1]);
    if (parts.size() % 2) next.push_back(parts.back());
    parts = std::move(next);
  }
  return parts.front();
}

/// Deterministic parallel map-reduce over [0, n).
template <class T, class F>
T parallel_sum(std::size_t n, std::size_t chunk_size, const T& zero, F&& per_chunk) {
  std::vector<T> parts(chunk_count(n, chunk_size), zero);
  parallel_chunks(n, chunk_size, [&](std::size_t c, std::size_t b, std::size_t e) {
    parts[c] = per_chunk(b, e);
  });
  return tree_reduce(std::move(parts), zero);
}

}  // namespace liedeg
