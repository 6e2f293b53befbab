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

// Exhaustive support-enumeration decoder: the ground truth used to check
// the iterative solvers on small instances.

#pragma once

#include <cstdint>
#include <string>

#include "secobs/observability.hpp"
#include "secobs/support.hpp"
#include "secobs/system_model.hpp"

namespace secobs {

enum class DecodeStatus { unique, ambiguous, infeasible };

const char* to_string(DecodeStatus s);

struct DecodeResult {
  DecodeStatus status = DecodeStatus::infeasible;
  Vector x;
  Vector E;
  SupportSet support;
  /// Number of candidate supports that fit the data at the accepted size.
  int consistent_supports = 0;
  std::string diagnostic;
};

struct OracleConfig {
  double residual_rel_tol = 1e-8;  // accept when ||r|| <= tol * (1 + ||Y||)
  double ambiguity_tol = 1e-6;     // two fits differing in x by more are ambiguous
  std::uint64_t guard = kCombinationGuard;
  /// Sensors that may be attacked; empty means all.
  SupportSet attackable;

  friend bool operator==(const OracleConfig&, const OracleConfig&) = default;
};

/// Tries supports of size 0, 1, ..., s in lexicographic order and returns
/// the sparsest consistent explanation of Y.
DecodeResult brute_force_decode(const BatchModel& model, const Vector& y, int s,
                                const OracleConfig& cfg = {}, Exec exec = Exec::parallel);

}  // namespace secobs
