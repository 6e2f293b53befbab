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

#include "secobs/etpl.hpp"

#include <string>

#include "secobs/projection.hpp"

namespace secobs {

const char* to_string(StepStatus s) {
  switch (s) {
    case StepStatus::initialized:
      return "initialized";
    case StepStatus::decreased:
      return "decreased";
    case StepStatus::at_floor:
      return "at_floor";
    case StepStatus::non_decreasing:
      return "non_decreasing";
  }
  return "unknown";
}

ProjectedObserver::ProjectedObserver(BatchModel model, AugmentedModel aug, int s,
                                     EtplConfig cfg)
    : model_(std::move(model)), aug_(std::move(aug)), s_(s), cfg_(cfg) {
  if (aug_.n != model_.n() || aug_.p != model_.p() || aug_.tau != model_.tau() ||
      aug_.m != model_.m()) {
    throw UsageError("ProjectedObserver: batch and augmented models disagree");
  }
  if (s < 0 || s > model_.p()) {
    throw UsageError("ProjectedObserver: s outside [0, p]");
  }
  cfg_.attackable.check_bound(model_.p());
  if (cfg_.max_inner < 1 || cfg_.max_meas_rounds < 1) {
    throw UsageError("ProjectedObserver: iteration caps must be >= 1");
  }
  const double lmax = model_.lambda_max_qtq();
  if (cfg_.gain_mode == GainMode::q_transpose_sigma) {
    sigma_ = cfg_.sigma > 0.0 ? cfg_.sigma : 0.5 / lmax;
    if (!(sigma_ * lmax < 1.0)) {
      throw UsageError("ProjectedObserver: sigma must satisfy sigma < 1 / lambda_max(Q^T Q)");
    }
  } else {
    pinv_ = std::make_shared<const LeastSquaresSolver>(model_.Q());
  }
}

double ProjectedObserver::lyapunov(const Vector& z, const Vector& y_window) const {
  return 0.5 * (y_window - model_.apply_q(z)).squaredNorm();
}

Vector ProjectedObserver::time_update(const Vector& z, const Vector& u_prev,
                                      const Vector& y_new) const {
  if (u_prev.size() != aug_.m * aug_.tau || y_new.size() != aug_.p) {
    throw UsageError("ProjectedObserver::time_update: input or output has wrong length");
  }
  if (z.size() != model_.z_size()) {
    throw UsageError("ProjectedObserver::time_update: z has wrong length");
  }
  Vector ubar(u_prev.size() + y_new.size());
  ubar << u_prev, y_new;
  return aug_.Abar * z + aug_.Bbar * ubar;
}

Vector ProjectedObserver::measurement_update(const Vector& z, const Vector& y_window) const {
  const Vector r = y_window - model_.apply_q(z);
  if (pinv_) {
    return z + pinv_->solve(r);
  }
  return z + sigma_ * model_.apply_qt(r);
}

ObserverState ProjectedObserver::init(const Vector& y_first) const {
  return init(y_first, Vector::Zero(model_.z_size()));
}

ObserverState ProjectedObserver::init(const Vector& y_first, const Vector& z0) const {
  if (y_first.size() != model_.window_size() || z0.size() != model_.z_size()) {
    throw UsageError("ProjectedObserver::init: dimension mismatch");
  }
  ObserverState st;
  st.z_hat = project(z0, model_.n(), model_.p(), model_.tau(), s_, cfg_.attackable);
  st.last_V = lyapunov(st.z_hat, y_first);
  st.status = StepStatus::initialized;
  return st;
}

ObserverState ProjectedObserver::step(const ObserverState& prev, const Vector& u_prev,
                                      const Vector& y_new, const Vector& y_window) const {
  if (y_window.size() != model_.window_size()) {
    throw UsageError("ProjectedObserver::step: Y has wrong length");
  }
  const int n = model_.n();
  const int p = model_.p();
  const int tau = model_.tau();

  Vector z = time_update(prev.z_hat, u_prev, y_new);
  const double v_prev = prev.last_V;

  ObserverState next;
  next.step_count = prev.step_count + 1;
  next.status = StepStatus::non_decreasing;

  Vector best = project(z, n, p, tau, s_, cfg_.attackable);
  double best_v = lyapunov(best, y_window);
  int inner_total = 0;
  int rounds = 0;

  // At least one measurement round runs even if the time update alone
  // already lowered V.
  while (rounds < cfg_.max_meas_rounds) {
    ++rounds;
    Vector zm = project(z, n, p, tau, s_, cfg_.attackable);
    const double v_round = lyapunov(zm, y_window);
    double v_temp = v_round;
    Vector zm_proj = zm;
    int m = 0;
    const int inner_cap = pinv_ ? 1 : cfg_.max_inner;
    while (v_temp >= v_round && v_temp > cfg_.v_floor && m < inner_cap) {
      zm = measurement_update(zm, y_window);
      ++m;
      zm_proj = project(zm, n, p, tau, s_, cfg_.attackable);
      v_temp = lyapunov(zm_proj, y_window);
    }
    inner_total += m;
    z = zm;
    if (v_temp < best_v) {
      best_v = v_temp;
      best = zm_proj;
    }
    if (v_temp < v_prev - cfg_.eps_equal) {
      next.status = StepStatus::decreased;
      break;
    }
    if (v_temp <= cfg_.v_floor) {
      next.status = StepStatus::at_floor;
      break;
    }
    if (v_temp >= v_round) {
      // Inner loop could not improve on this round's start; more rounds
      // would repeat the same iterates.
      break;
    }
  }

  next.z_hat = std::move(best);
  next.last_V = best_v;
  next.inner_iters = inner_total;
  next.meas_rounds = rounds;
  return next;
}

double time_update_growth(const AugmentedModel& aug) { return spectral_norm(aug.Abar); }

}  // namespace secobs
