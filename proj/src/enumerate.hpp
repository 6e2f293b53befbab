// Copyright 2026 The secobs Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Internal: data-parallel reduction over the k-subsets of {0..n-1}.

#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "secobs/support.hpp"

namespace secobs::detail {

inline constexpr std::uint64_t kChunk = 128;

/// Folds map(rank, comb) over all k-subsets in lexicographic order.
/// Chunks are folded independently (in parallel when `parallel`) and then
/// combined in chunk order, so the result does not depend on scheduling as
/// long as `combine` is associative.
template <class T, class Map, class Combine>
T reduce_combinations(int n, int k, bool parallel, T init, Map map, Combine combine) {
  const std::uint64_t total = binomial(n, k);
  if (total == 0) {
    return init;
  }
  if (!parallel) {
    T acc = init;
    std::vector<int> comb(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
      comb[static_cast<std::size_t>(i)] = i;
    }
    std::uint64_t r = 0;
    do {
      acc = combine(acc, map(r, comb));
      ++r;
    } while (next_combination(comb, n));
    return acc;
  }

  const auto nchunks = static_cast<std::int64_t>((total + kChunk - 1) / kChunk);
  std::vector<T> partial(static_cast<std::size_t>(nchunks), init);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t c = 0; c < nchunks; ++c) {
    const std::uint64_t start = static_cast<std::uint64_t>(c) * kChunk;
    const std::uint64_t end = std::min(total, start + kChunk);
    std::vector<int> comb = unrank_combination(start, n, k);
    T acc = init;
    for (std::uint64_t r = start; r < end; ++r) {
      acc = combine(acc, map(r, comb));
      next_combination(comb, n);
    }
    partial[static_cast<std::size_t>(c)] = acc;
  }
  T acc = init;
  for (const auto& v : partial) {
    acc = combine(acc, v);
  }
  return acc;
}

}  // namespace secobs::detail
