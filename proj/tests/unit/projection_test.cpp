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

#include "secobs/projection.hpp"
#include "test_util.hpp"

namespace secobs {
namespace {

using testing::Rng;

// Exhaustive oracle: the best s-row-sparse approximation in Euclidean norm.
Vector projection_oracle(const Vector& e, int p, int tau, int s) {
  double best_kept = -1.0;
  Vector best;
  for_each_combination(p, s, [&](const std::vector<int>& sup) {
    Vector cand = Vector::Zero(e.size());
    double kept = 0.0;
    for (int j = 0; j < tau; ++j) {
      for (int i : sup) {
        cand(j * p + i) = e(j * p + i);
        kept += e(j * p + i) * e(j * p + i);
      }
    }
    // Strict comparison keeps the lexicographically first optimal support.
    if (kept > best_kept) {
      best_kept = kept;
      best = cand;
    }
  });
  return best;
}

TEST(Projection, NineEntryExample) {
  Vector e(9);
  e << 1, 2, 3, 4, 5, 6, 7, 8, 9;
  const Vector energy = row_energy(e, 3, 3);
  EXPECT_EQ(energy, (Vector(3) << 66, 93, 126).finished());
  Vector expect(9);
  expect << 0, 0, 3, 0, 0, 6, 0, 0, 9;
  EXPECT_EQ(project_attack(e, 3, 3, 1), expect);
}

TEST(Projection, MatchesExhaustiveOracle) {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const int p = testing::uniform_int(rng, 1, 6);
    const int tau = testing::uniform_int(rng, 1, 4);
    const int s = testing::uniform_int(rng, 0, p);
    const Vector e = testing::random_vector(p * tau, rng);
    EXPECT_EQ(project_attack(e, p, tau, s), projection_oracle(e, p, tau, s)) << "trial " << trial;
  }
}

TEST(Projection, IsIdempotentAndMembersAreFixed) {
  Rng rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const int p = testing::uniform_int(rng, 1, 8);
    const int tau = testing::uniform_int(rng, 1, 5);
    const int s = testing::uniform_int(rng, 0, p);
    const Vector e = testing::random_vector(p * tau, rng);
    const Vector once = project_attack(e, p, tau, s);
    EXPECT_EQ(project_attack(once, p, tau, s), once);
    EXPECT_TRUE(CyclicSparseVector(once, p, tau).is_member(s));
    const SupportSet sup = testing::random_support(p, s, rng);
    const Vector member = testing::random_attack_window(sup, p, tau, 1.0, rng);
    EXPECT_EQ(project_attack(member, p, tau, s), member);
  }
}

TEST(Projection, NeverFartherThanAnyMember) {
  Rng rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    const int p = 6;
    const int tau = 3;
    const int s = testing::uniform_int(rng, 0, p);
    const Vector e = testing::random_vector(p * tau, rng);
    const double d = (project_attack(e, p, tau, s) - e).norm();
    const Vector other =
        testing::random_attack_window(testing::random_support(p, s, rng), p, tau, 1.0, rng);
    EXPECT_LE(d, (other - e).norm() + 1e-12);
  }
}

TEST(Projection, TiesKeepSmallerIndices) {
  Vector e(4);
  e << 1, -1, 1, 1;
  Vector expect(4);
  expect << 1, -1, 0, 0;
  EXPECT_EQ(project_attack(e, 4, 1, 2), expect);
  EXPECT_EQ(top_energy_sensors(Vector::Ones(5), 3), (SupportSet{0, 1, 2}));
}

TEST(Projection, StateBlockIsUntouched) {
  Rng rng(34);
  const int n = 3;
  const int p = 4;
  const int tau = 2;
  const Vector z = testing::random_vector(n + p * tau, rng);
  const Vector out = project(z, n, p, tau, 1);
  EXPECT_EQ(out.head(n), z.head(n));
  EXPECT_EQ(out.tail(p * tau), project_attack(z.tail(p * tau), p, tau, 1));
  Vector in_place = z;
  project_in_place(in_place, n, p, tau, 1);
  EXPECT_EQ(in_place, out);
}

TEST(Projection, ConfinedProjectionZeroesNonAttackableRows) {
  Vector e(9);
  e << 1, 2, 3, 4, 5, 6, 7, 8, 9;
  // Sensor 2 carries the most energy but is outside the pool.
  Vector expect(9);
  expect << 0, 2, 0, 0, 5, 0, 0, 8, 0;
  EXPECT_EQ(project_attack(e, 3, 3, 1, SupportSet{0, 1}), expect);
  EXPECT_EQ(project_attack(e, 3, 3, 2, SupportSet{}), project_attack(e, 3, 3, 2));
  Vector both(9);
  both << 1, 2, 0, 4, 5, 0, 7, 8, 0;
  EXPECT_EQ(project_attack(e, 3, 3, 3, SupportSet{0, 1}), both);
}

TEST(Projection, ConfinedMatchesOracleOnPool) {
  Rng rng(35);
  for (int trial = 0; trial < 100; ++trial) {
    const int p = 6;
    const int tau = 2;
    const int s = testing::uniform_int(rng, 0, 3);
    const SupportSet pool = testing::random_support(p, 3, rng);
    const Vector e = testing::random_vector(p * tau, rng);
    Vector masked = e;
    for (int j = 0; j < tau; ++j) {
      for (int i = 0; i < p; ++i) {
        if (!pool.contains(i)) masked(j * p + i) = 0.0;
      }
    }
    // Masked rows have zero energy, so the unconfined projection of the
    // masked window picks from the pool whenever pool rows are nonzero.
    EXPECT_EQ(project_attack(e, p, tau, s, pool), project_attack(masked, p, tau, s));
  }
}

TEST(Projection, RejectsBadShapes) {
  EXPECT_THROW(project_attack(Vector::Zero(5), 2, 2, 1), UsageError);
  EXPECT_THROW(project_attack(Vector::Zero(4), 2, 2, 3), UsageError);
  EXPECT_THROW(project_attack(Vector::Zero(4), 2, 2, 1, SupportSet{2}), UsageError);
}

}  // namespace
}  // namespace secobs
