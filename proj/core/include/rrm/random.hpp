#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <random>

namespace rrm {

using Rng = std::mt19937_64;

// Every random draw is keyed by (master seed, sample index); the engine for a
// key does not depend on how many workers run or in which order.
struct SeedPath {
  std::uint64_t master = 0;
  std::uint64_t index = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

// Child seed for a labelled sub-experiment, e.g. derive_seed(seed, {grid, run}).
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys);

Rng make_rng(const SeedPath& path);

// 0 means "all hardware threads".
int resolve_threads(int requested);

// Runs fn(i) for i in [0, n) on up to `threads` workers. Callers write results
// into per-index slots and reduce them in index order afterwards.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace rrm
