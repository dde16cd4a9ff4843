#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace rotsys {

// Deterministic fork/join: the index range [0, total) is cut into fixed
// chunks, workers claim chunks from an atomic counter, and the caller folds
// the per-chunk results in chunk order. Output is therefore independent of
// the worker count.
template <typename Result, typename ChunkFn>
std::vector<Result> run_chunked(std::uint64_t total, int jobs, std::uint64_t chunk_size, ChunkFn fn) {
  if (jobs < 1) jobs = 1;
  if (chunk_size == 0) chunk_size = 1;
  const std::uint64_t nchunks = total == 0 ? 0 : (total - 1) / chunk_size + 1;
  std::vector<Result> results(static_cast<size_t>(nchunks));
  if (nchunks == 0) return results;
  if (jobs == 1 || nchunks == 1) {
    for (std::uint64_t c = 0; c < nchunks; ++c)
      results[static_cast<size_t>(c)] = fn(c * chunk_size, std::min(total, (c + 1) * chunk_size));
    return results;
  }
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::uint64_t c = next.fetch_add(1);
      if (c >= nchunks) return;
      results[static_cast<size_t>(c)] = fn(c * chunk_size, std::min(total, (c + 1) * chunk_size));
    }
  };
  std::vector<std::thread> threads;
  int nthreads = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(jobs), nchunks));
  threads.reserve(static_cast<size_t>(nthreads));
  for (int t = 0; t < nthreads; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  return results;
}

}  // namespace rotsys
