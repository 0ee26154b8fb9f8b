#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace sdd {

// Deterministic trial-level parallelism: [0, trials) is split into
// contiguous chunks, one worker per chunk. The body must write only to
// per-trial slots; callers reduce afterwards in index order, which makes
// results byte-identical for any thread count.
inline void parallel_trials(long trials, int threads, const std::function<void(long)>& body) {
  if (trials <= 0) return;
  if (threads < 1) threads = 1;
  if (threads == 1 || trials == 1) {
    for (long i = 0; i < trials; ++i) body(i);
    return;
  }
  const long n_workers = std::min<long>(threads, trials);
  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(n_workers));
  const long chunk = (trials + n_workers - 1) / n_workers;
  for (long w = 0; w < n_workers; ++w) {
    const long begin = w * chunk;
    const long end = std::min(trials, begin + chunk);
    workers.emplace_back([begin, end, &body] {
      for (long i = begin; i < end; ++i) body(i);
    });
  }
  for (auto& worker : workers) worker.join();
}

}  // namespace sdd
