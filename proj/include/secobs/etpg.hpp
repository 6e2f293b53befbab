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

// Event-triggered projected gradient descent for the batch problem
//   min 1/2 ||Y - Q z||^2  over  z in R^n x S_s.
//
// The outer loop keeps the Lyapunov value at projection points strictly
// decreasing: each outer iteration runs gradient steps until projecting the
// current iterate would land below the previous projection point.

#pragma once

#include <chrono>
#include <optional>
#include <vector>

#include "secobs/support.hpp"
#include "secobs/system_model.hpp"

namespace secobs {

enum class EtpgMode { gradient, one_step_pseudoinverse };

struct EtpgConfig {
  /// Step size; values <= 0 select default_step_size.
  double eta = 0.0;
  double eps_terminate = 1e-6;
  /// 0 selects 10 * (n + p * tau).
  int max_outer = 0;
  int max_inner = 1000;
  EtpgMode mode = EtpgMode::gradient;
  /// Record V at every inner iterate, not just at projection points.
  bool trace_inner = true;
  /// Sensors that may be attacked; empty means all.
  SupportSet attackable;

  friend bool operator==(const EtpgConfig&, const EtpgConfig&) = default;
};

/// One sample of V along the run. `projected` marks projection points.
struct TracePoint {
  int outer = 0;
  int inner = 0;
  double value = 0.0;
  bool projected = false;
};

enum class SolveStatus {
  converged,
  outer_cap,  // max_outer reached with V still above eps_terminate
  inner_cap,  // trigger did not fire within max_inner gradient steps
  stalled,    // pseudoinverse step failed to lower V
};

const char* to_string(SolveStatus s);

struct Estimate {
  Vector x_hat;
  Vector E_hat;
  std::vector<TracePoint> v_trace;
  /// Gradient steps taken in each completed or aborted outer iteration.
  std::vector<int> inner_counts;
  int outer_iters = 0;
  long long inner_iters_total = 0;
  double final_v = 0.0;
  std::chrono::nanoseconds wall_time{0};
  bool converged = false;
  SolveStatus status = SolveStatus::outer_cap;

  Vector z() const;
  /// V at projection points, in order.
  std::vector<double> projection_values() const;
};

/// 1/2 ||Y - Q z||^2 with a dense Q.
double lyapunov_v(const Matrix& q, const Vector& y, const Vector& z);
/// Same value through the structured product Q z = O x + E.
double lyapunov_v(const BatchModel& model, const Vector& y, const Vector& z);

/// grad V(z) = -Q^T (Y - Q z).
Vector lyapunov_gradient(const BatchModel& model, const Vector& y, const Vector& z);

/// 1 / lambda_max(Q^T Q).
double default_step_size(const Matrix& q);
double default_step_size(const BatchModel& model);

Estimate etpg_solve(const BatchModel& model, const Vector& y, int s,
                    const EtpgConfig& cfg = {});

/// Worst-case inner-loop length under the termination conditions:
///   ceil( log((3/2) sqrt(delta / lambda) - 1) / log(1 - eta * delta) ).
/// Empty when delta / lambda <= 4/9 or eta * delta is outside (0, 1].
std::optional<long long> inner_loop_bound(double delta_2s, double lambda_max, double eta);

}  // namespace secobs
