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

// Solvability checks: s-sparse observability, the s-restricted eigenvalue
// and the attack-resilience analyses built on them.
//
// Every exhaustive routine has a serial reference path and an OpenMP path.
// The parallel path partitions the lexicographic combination index space
// and reduces deterministically, so both paths return identical results.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "secobs/support.hpp"
#include "secobs/system_model.hpp"

namespace secobs {

enum class Exec { serial, parallel };

/// Raised when an enumeration would visit more supports than allowed.
class CombinatorialGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by max_resilience when the plant is not observable at all.
class UnsolvableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RestrictedEigReport {
  double delta = 0.0;
  /// Attack support (the s sensors whose identity columns are kept) that
  /// attains delta; first in lexicographic order on ties.
  SupportSet argmin_support;
  std::uint64_t combinations_checked = 0;
};

/// [C; CA; ...; CA^(n-1)] restricted to the given sensor rows.
Matrix observability_matrix(const LtiSystem& sys, const SupportSet& sensors);

/// (A, C_keep) observable after deleting any s sensors.
bool is_sparse_observable(const LtiSystem& sys, int s, Exec exec = Exec::parallel,
                          std::uint64_t guard = kCombinationGuard);
/// Same test when only sensors in `attackable` can be attacked (every
/// removal of min(s, |attackable|) of them keeps the system observable).
bool is_sparse_observable(const LtiSystem& sys, int s, const SupportSet& attackable,
                          Exec exec = Exec::parallel, std::uint64_t guard = kCombinationGuard);

/// delta_s: minimum over attack supports S, |S| = s, of
/// lambda_min(Q_S^T Q_S) with Q_S = [O | identity columns of S in every
/// window block]. s = 0 gives lambda_min(O^T O).
RestrictedEigReport restricted_eigenvalue(const BatchModel& model, int s,
                                          Exec exec = Exec::parallel,
                                          std::uint64_t guard = kCombinationGuard);

/// Largest s with 2s-sparse observability. Throws UnsolvableError if the
/// plant is not observable.
int max_resilience(const LtiSystem& sys, Exec exec = Exec::parallel);

/// Brute-force form of the uniqueness argument: every removal of 2s sensors
/// leaves O (tau window blocks) with a trivial kernel. Uses a pivoted LU
/// rather than the SVD rank test so it can cross-check is_sparse_observable.
bool injectivity_bruteforce(const BatchModel& model, int s,
                            std::uint64_t guard = kCombinationGuard);

/// Resilience when the attacker is confined to a subset of sensor groups.
/// A group is a set of rows of C that fail together (e.g. the two channels
/// of one IMU).
struct ConfinedResilience {
  int s = 0;
  /// Largest group set T (|T| >= 2s) such that removing any 2s groups of T
  /// keeps (A, C) observable; indices into the group list.
  std::vector<int> tolerable_groups;
  /// Union of the sensor rows of those groups.
  SupportSet tolerable_sensors;
};

/// Singleton groups {0}, {1}, ..., {p-1}.
std::vector<SupportSet> singleton_groups(int p);

/// Largest s >= 1 for which a tolerable confined set exists (s = 0 and an
/// empty set when none does). At most 20 groups.
ConfinedResilience confined_resilience(const LtiSystem& sys,
                                       const std::vector<SupportSet>& groups);

/// Rows kept when the given sensors are removed, replicated over `blocks`
/// window blocks of p rows each.
std::vector<int> kept_rows(const SupportSet& removed, int p, int blocks);

}  // namespace secobs
