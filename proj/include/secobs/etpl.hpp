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

// Event-triggered projected Luenberger observer: the recursive counterpart
// of etpg_solve. Each step propagates the previous projected estimate with
// the augmented dynamics, then alternates Luenberger updates and
// projections until V on the new window falls below its value at the
// previous step.

#pragma once

#include <memory>

#include "secobs/support.hpp"
#include "secobs/system_model.hpp"

namespace secobs {

enum class GainMode { q_transpose_sigma, pseudoinverse };

struct EtplConfig {
  GainMode gain_mode = GainMode::q_transpose_sigma;
  /// L = sigma * Q^T. Values <= 0 select 1 / (2 lambda_max(Q^T Q)).
  double sigma = 0.0;
  /// A step is accepted when V_new < V_old - eps_equal.
  double eps_equal = 0.0;
  int max_inner = 1000;
  int max_meas_rounds = 50;
  /// V at or below this value ends the measurement update even without a
  /// strict decrease (the estimate already fits the window to rounding).
  double v_floor = 0.0;
  /// Sensors that may be attacked; empty means all.
  SupportSet attackable;

  friend bool operator==(const EtplConfig&, const EtplConfig&) = default;
};

enum class StepStatus {
  initialized,
  decreased,       // V(z_Pi(t)) < V(z_Pi(t-1)) - eps_equal
  at_floor,        // V(z_Pi(t)) <= v_floor without a strict decrease
  non_decreasing,  // caps hit; best iterate returned
};

const char* to_string(StepStatus s);

struct ObserverState {
  /// Projected estimate (x(t-tau+1), E(t)).
  Vector z_hat;
  /// V(z_hat) on the window it was computed for.
  double last_V = 0.0;
  long long step_count = 0;
  StepStatus status = StepStatus::initialized;
  int inner_iters = 0;
  int meas_rounds = 0;
};

class ProjectedObserver {
 public:
  ProjectedObserver(BatchModel model, AugmentedModel aug, int s, EtplConfig cfg = {});

  const BatchModel& model() const { return model_; }
  const AugmentedModel& augmented() const { return aug_; }
  int s() const { return s_; }
  double sigma() const { return sigma_; }

  /// Zero estimate; last_V = 1/2 ||Y||^2 on the first window.
  ObserverState init(const Vector& y_first) const;
  /// Starts from a given z (projected onto R^n x S_s first).
  ObserverState init(const Vector& y_first, const Vector& z0) const;

  /// One time update followed by the event-triggered measurement update.
  /// u_prev = U(t-1) = (u(t-tau), ..., u(t-1)), y_new = y(t),
  /// y_window = Y(t) = Ytilde(t) - F U(t).
  ObserverState step(const ObserverState& prev, const Vector& u_prev, const Vector& y_new,
                     const Vector& y_window) const;

  /// Abar z + Bbar (u_prev, y_new).
  Vector time_update(const Vector& z, const Vector& u_prev, const Vector& y_new) const;

  /// z + L (Y - Q z) for the configured gain.
  Vector measurement_update(const Vector& z, const Vector& y_window) const;

  double lyapunov(const Vector& z, const Vector& y_window) const;

 private:
  BatchModel model_;
  AugmentedModel aug_;
  int s_;
  EtplConfig cfg_;
  double sigma_ = 0.0;
  std::shared_ptr<const LeastSquaresSolver> pinv_;
};

/// Spectral norm of Abar: the per-step growth factor of ||z* - z|| under
/// the time update alone.
double time_update_growth(const AugmentedModel& aug);

}  // namespace secobs
