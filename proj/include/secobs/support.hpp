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

// Sensor index sets and combination enumeration shared by the
// observability analysis, the projection oracle tests and the brute-force
// decoder.

#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace secobs {

/// Strictly increasing list of sensor indices.
class SupportSet {
 public:
  SupportSet() = default;
  SupportSet(std::initializer_list<int> idx);
  explicit SupportSet(std::vector<int> idx);

  const std::vector<int>& indices() const { return idx_; }
  std::size_t size() const { return idx_.size(); }
  bool empty() const { return idx_.empty(); }
  bool contains(int i) const;

  /// Complement within {0, ..., p-1}.
  SupportSet complement(int p) const;

  /// Throws UsageError if any index is >= p.
  void check_bound(int p) const;

  std::string to_string() const;

  friend bool operator==(const SupportSet&, const SupportSet&) = default;
  friend auto operator<=>(const SupportSet&, const SupportSet&) = default;

 private:
  std::vector<int> idx_;
};

/// C(n, k); saturates at UINT64_MAX instead of overflowing.
std::uint64_t binomial(int n, int k);

/// Default cap on the number of supports any exhaustive routine will visit.
inline constexpr std::uint64_t kCombinationGuard = 1'000'000;

/// Advances `comb` (k increasing indices < n) to its lexicographic successor.
/// Returns false when `comb` was the last combination.
bool next_combination(std::vector<int>& comb, int n);

/// The `rank`-th k-subset of {0..n-1} in lexicographic order.
std::vector<int> unrank_combination(std::uint64_t rank, int n, int k);

/// Visits all k-subsets of {0..n-1} in lexicographic order.
void for_each_combination(int n, int k,
                          const std::function<void(const std::vector<int>&)>& fn);

}  // namespace secobs
