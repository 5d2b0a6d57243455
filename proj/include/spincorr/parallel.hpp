#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <thread>
#include <vector>

namespace spincorr {

/// Worker count for trial loops; 0 means one per hardware thread.
struct Execution {
  unsigned workers = 0;

  unsigned resolved() const {
    if (workers != 0) return workers;
    return std::max(1u, std::thread::hardware_concurrency());
  }
};

/// Runs visit(trial, tally) for trial in [0, n), where visit increments
/// entries of a K-bin tally. Trials are split into contiguous chunks, one
/// per worker; integer partial sums make the merge order irrelevant.
template <std::size_t K, class VisitFn>
std::array<std::uint64_t, K> parallel_tally(std::uint64_t n, Execution exec, const VisitFn& visit) {
  using Tally = std::array<std::uint64_t, K>;
  const std::uint64_t workers = std::clamp<std::uint64_t>(exec.resolved(), 1, std::max<std::uint64_t>(n, 1));
  std::vector<Tally> partial(workers, Tally{});

  auto run_chunk = [&](std::uint64_t w) {
    const std::uint64_t begin = n * w / workers;
    const std::uint64_t end = n * (w + 1) / workers;
    Tally local{};
    for (std::uint64_t t = begin; t < end; ++t) visit(t, local);
    partial[w] = local;
  };

  if (workers == 1) {
    run_chunk(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::uint64_t w = 1; w < workers; ++w) pool.emplace_back(run_chunk, w);
    run_chunk(0);
  }

  Tally total{};
  for (const auto& p : partial)
    for (std::size_t k = 0; k < K; ++k) total[k] += p[k];
  return total;
}

}  // namespace spincorr
