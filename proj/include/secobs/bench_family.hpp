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

// Random-system benchmark comparing the batch solver and the observer:
// execution time (until the algorithm terminates) versus convergence time
// (until the estimate is eps-close to the true state).
//
// Both algorithms are deployed on a common sampling period per instance,
// the smallest one at which either can run: max(batch solve time, longest
// observer step). The observer only sees a new sample once per period, so
// its convergence time is (k - 1) periods plus the compute time of step k.
// The compute-only figure (sum of step times) is reported alongside.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "secobs/etpg.hpp"
#include "secobs/etpl.hpp"
#include "secobs/simulation.hpp"

namespace secobs {

struct BenchConfig {
  static EtpgConfig default_etpg() {
    EtpgConfig c;
    c.max_outer = 200000;
    c.trace_inner = false;
    return c;
  }

  int n = 20;
  int p = 25;
  int systems = 100;
  int s_min = 0;
  int s_max = 12;
  std::uint64_t seed = 1;
  /// Window length; 0 selects n.
  int tau = 0;
  /// Observer steps after the first window before a run counts as failed.
  int horizon = 2000;
  double attack_scale = 10.0;
  double eps_close = 1e-6;
  double success_rel_tol = 1e-4;
  /// Batch solver settings; the outer cap is raised so runs end on the
  /// Lyapunov threshold rather than the cap.
  EtpgConfig etpg = default_etpg();
  EtplConfig etpl;
  /// Worker threads; 0 uses the OpenMP default.
  int jobs = 0;
  Exec exec = Exec::parallel;
};

/// One algorithm on one (s, system) instance.
struct BenchRun {
  int s = 0;
  int system = 0;
  std::string algo;
  long long exec_ns = 0;
  long long conv_ns = 0;
  long long conv_compute_ns = 0;
  long long period_ns = 0;
  int steps = 0;
  bool success = false;
  double rel_error = 0.0;
  double outer = 0.0;
  double inner = 0.0;
};

/// Per-(s, algo) means over systems.
struct BenchRow {
  int s = 0;
  std::string algo;
  double mean_exec_ns = 0.0;
  double mean_conv_ns = 0.0;
  double mean_conv_compute_ns = 0.0;
  double success_rate = 0.0;
  double mean_outer = 0.0;
  double mean_inner = 0.0;
  int runs = 0;

  friend bool operator==(const BenchRow&, const BenchRow&) = default;
};

/// Standard normal A, C (B empty) with A scaled to spectral radius 1.
LtiSystem random_bench_system(int n, int p, Rng& rng);

/// All runs sorted by (s, system, algo).
std::vector<BenchRun> bench_runs(const BenchConfig& cfg);

std::vector<BenchRow> summarize(const std::vector<BenchRun>& runs);

inline std::vector<BenchRow> bench_random_family(const BenchConfig& cfg) {
  return summarize(bench_runs(cfg));
}

}  // namespace secobs
