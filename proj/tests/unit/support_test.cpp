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

#include <gtest/gtest.h>

#include <limits>
#include <set>

#include "secobs/numerics.hpp"
#include "secobs/support.hpp"

namespace secobs {
namespace {

TEST(Support, BinomialSmallValues) {
  EXPECT_EQ(binomial(5, 0), 1u);
  EXPECT_EQ(binomial(5, 2), 10u);
  EXPECT_EQ(binomial(25, 12), 5200300u);
  EXPECT_EQ(binomial(4, 5), 0u);
  EXPECT_EQ(binomial(400, 2), 79800u);
}

TEST(Support, BinomialSaturates) {
  EXPECT_EQ(binomial(200, 100), std::numeric_limits<std::uint64_t>::max());
}

TEST(Support, SupportSetValidation) {
  EXPECT_THROW(SupportSet({2, 1}), UsageError);
  EXPECT_THROW(SupportSet({1, 1}), UsageError);
  EXPECT_THROW(SupportSet({-1}), UsageError);
  const SupportSet s{0, 3};
  EXPECT_TRUE(s.contains(3));
  EXPECT_FALSE(s.contains(1));
  EXPECT_EQ(s.complement(5), (SupportSet{1, 2, 4}));
  EXPECT_THROW(s.check_bound(3), UsageError);
  EXPECT_NO_THROW(s.check_bound(4));
  EXPECT_EQ(s.to_string(), "{0,3}");
}

TEST(Support, EnumerationIsLexicographicAndComplete) {
  for (int n = 0; n <= 7; ++n) {
    for (int k = 0; k <= n; ++k) {
      std::vector<std::vector<int>> seen;
      for_each_combination(n, k, [&](const std::vector<int>& c) { seen.push_back(c); });
      ASSERT_EQ(seen.size(), binomial(n, k)) << n << " choose " << k;
      for (std::size_t r = 0; r < seen.size(); ++r) {
        EXPECT_EQ(unrank_combination(r, n, k), seen[r]);
        if (r > 0) {
          EXPECT_LT(seen[r - 1], seen[r]);
        }
      }
      std::set<std::vector<int>> uniq(seen.begin(), seen.end());
      EXPECT_EQ(uniq.size(), seen.size());
    }
  }
}

TEST(Support, NextCombinationStopsAtLast) {
  std::vector<int> c{2, 3};
  EXPECT_FALSE(next_combination(c, 4));
  c = {0, 3};
  EXPECT_TRUE(next_combination(c, 4));
  EXPECT_EQ(c, (std::vector<int>{1, 2}));
}

}  // namespace
}  // namespace secobs
