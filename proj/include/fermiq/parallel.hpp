// Copyright 2026 The fermiq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <random>
#include <thread>
#include <vector>

namespace fermiq {

// Independent generator for work item `stream` under a run seed; the result
// does not depend on which thread evaluates the item.
// Seeding goes through two splitmix64 rounds; std::seed_seq costs tens of
// microseconds per item, which dominates million-sample runs.
inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::mt19937_64 stream_rng(unsigned long long seed, unsigned long long stream) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ stream));
}

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(i) for i in [0, n) on up to `threads` workers. Work is handed out
// dynamically, so fn must write only to slot i of its outputs.
template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  const int workers = std::max(1, std::min<int>(resolve_threads(threads), static_cast<int>(std::max<std::size_t>(n, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

// Pairwise (tree) sum in index order; deterministic for a fixed input order.
template <class T, class Add>
T pairwise_reduce(const std::vector<T>& items, std::size_t lo, std::size_t hi, const T& zero, Add&& add) {
  if (hi <= lo) return zero;
  if (hi - lo == 1) return items[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return add(pairwise_reduce(items, lo, mid, zero, add), pairwise_reduce(items, mid, hi, zero, add));
}

template <class T, class Add>
T pairwise_reduce(const std::vector<T>& items, const T& zero, Add&& add) {
  return pairwise_reduce(items, 0, items.size(), zero, add);
}

inline double pairwise_sum(const std::vector<double>& v) {
  return pairwise_reduce(v, 0.0, [](double a, double b) { return a + b; });
}

}  // namespace fermiq
