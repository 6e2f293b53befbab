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

#include "secobs/support.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "secobs/numerics.hpp"

namespace secobs {

SupportSet::SupportSet(std::initializer_list<int> idx)
    : SupportSet(std::vector<int>(idx)) {}

SupportSet::SupportSet(std::vector<int> idx) : idx_(std::move(idx)) {
  for (std::size_t i = 0; i < idx_.size(); ++i) {
    if (idx_[i] < 0) {
      throw UsageError("SupportSet: negative sensor index");
    }
    if (i > 0 && idx_[i] <= idx_[i - 1]) {
      throw UsageError("SupportSet: indices must be strictly increasing");
    }
  }
}

bool SupportSet::contains(int i) const {
  return std::binary_search(idx_.begin(), idx_.end(), i);
}

SupportSet SupportSet::complement(int p) const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(std::max(0, p)));
  std::size_t j = 0;
  for (int i = 0; i < p; ++i) {
    if (j < idx_.size() && idx_[j] == i) {
      ++j;
    } else {
      out.push_back(i);
    }
  }
  return SupportSet(std::move(out));
}

void SupportSet::check_bound(int p) const {
  if (!idx_.empty() && idx_.back() >= p) {
    throw UsageError("SupportSet: index " + std::to_string(idx_.back()) +
                     " out of range for p = " + std::to_string(p));
  }
}

std::string SupportSet::to_string() const {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < idx_.size(); ++i) {
    os << (i ? "," : "") << idx_[i];
  }
  os << "}";
  return os.str();
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) {
    return 0;
  }
  k = std::min(k, n - k);
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    const auto num = static_cast<std::uint64_t>(n - k + i);
    // r * num / i is exact at every step; guard the multiplication.
    if (r > kMax / num) {
      return kMax;
    }
    r = r * num / static_cast<std::uint64_t>(i);
  }
  return r;
}

bool next_combination(std::vector<int>& comb, int n) {
  const int k = static_cast<int>(comb.size());
  int i = k - 1;
  while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - k + i) {
    --i;
  }
  if (i < 0) {
    return false;
  }
  ++comb[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < k; ++j) {
    comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
  }
  return true;
}

std::vector<int> unrank_combination(std::uint64_t rank, int n, int k) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(k));
  int next = 0;
  for (int slot = 0; slot < k; ++slot) {
    // Skip leading values whose block of completions lies before `rank`.
    for (int v = next;; ++v) {
      const std::uint64_t block = binomial(n - v - 1, k - slot - 1);
      if (rank < block) {
        out.push_back(v);
        next = v + 1;
        break;
      }
      rank -= block;
    }
  }
  return out;
}

void for_each_combination(int n, int k,
                          const std::function<void(const std::vector<int>&)>& fn) {
  if (k < 0 || k > n) {
    return;
  }
  std::vector<int> comb(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    comb[static_cast<std::size_t>(i)] = i;
  }
  do {
    fn(comb);
  } while (next_combination(comb, n));
}

}  // namespace secobs
