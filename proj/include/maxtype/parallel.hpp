#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "maxtype/ext_scalar.hpp"

namespace maxtype {

/// Worker cap for library-internal loops. Never changes results, only speed.
void set_thread_count(unsigned n);
unsigned thread_count();

namespace detail {
/// True on parallel_for workers; nested loops then run serially.
bool& in_worker();
}  // namespace detail

/// Runs body(i) for i in [0, n) over contiguous static chunks. Each index must
/// write only to its own output slot; callers merge slots in index order.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  const std::size_t workers = std::min<std::size_t>(thread_count(), n);
  if (workers <= 1 || detail::in_worker()) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      detail::in_worker() = true;
      try {
        for (std::size_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

/// Pairwise-tree sum of term(lo..hi-1): split at the midpoint until at most
/// kLeaf terms remain, then add left to right. The tree depends only on the
/// range length, so the rounding pattern is fixed for a given input order.
template <class Term>
ExtScalar pairwise_sum(std::size_t lo, std::size_t hi, const Term& term) {
  constexpr std::size_t kLeaf = 8;
  if (hi <= lo) return ExtScalar(0);
  if (hi - lo <= kLeaf) {
    ExtScalar acc = term(lo);
    for (std::size_t i = lo + 1; i < hi; ++i) acc += term(i);
    return acc;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(lo, mid, term) + pairwise_sum(mid, hi, term);
}

inline ExtScalar pairwise_sum(const std::vector<ExtScalar>& values) {
  return pairwise_sum(0, values.size(), [&](std::size_t i) -> const ExtScalar& { return values[i]; });
}

}  // namespace maxtype
