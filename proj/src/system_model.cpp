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

#include "secobs/system_model.hpp"

#include <string>

namespace secobs {

LtiSystem::LtiSystem(Matrix a, Matrix b, Matrix c)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
  if (a_.rows() != a_.cols()) {
    throw UsageError("LtiSystem: A must be square");
  }
  if (a_.rows() < 1) {
    throw UsageError("LtiSystem: need at least one state");
  }
  if (b_.rows() != a_.rows()) {
    // Autonomous systems may pass an empty B.
    if (b_.size() == 0) {
      b_ = Matrix::Zero(a_.rows(), 0);
    } else {
      throw UsageError("LtiSystem: B must have n rows");
    }
  }
  if (c_.cols() != a_.rows()) {
    throw UsageError("LtiSystem: C must have n columns");
  }
  if (c_.rows() < 1) {
    throw UsageError("LtiSystem: need at least one sensor");
  }
  require_finite(a_, "LtiSystem A");
  require_finite(b_, "LtiSystem B");
  require_finite(c_, "LtiSystem C");
}

BatchModel::BatchModel(LtiSystem sys, int tau) : sys_(std::move(sys)), tau_(tau) {
  const int n = sys_.n();
  const int p = sys_.p();
  const int m = sys_.m();
  if (tau < 1 || tau > n) {
    throw UsageError("build_batch_model: tau = " + std::to_string(tau) +
                     " outside [1, n = " + std::to_string(n) + "]");
  }

  // CA^j for j = 0 .. tau-1.
  o_.resize(p * tau, n);
  Matrix cak = sys_.C();
  for (int j = 0; j < tau; ++j) {
    o_.block(j * p, 0, p, n) = cak;
    cak = cak * sys_.A();
  }

  // Block (i, k) = C A^(i-k-1) B for i > k.
  f_ = Matrix::Zero(p * tau, m * tau);
  if (m > 0) {
    for (int d = 1; d < tau; ++d) {
      const Matrix blk = o_.block((d - 1) * p, 0, p, n) * sys_.B();
      for (int k = 0; k + d < tau; ++k) {
        f_.block((k + d) * p, k * m, p, m) = blk;
      }
    }
  }

  lambda_max_ = 1.0 + sym_eig_extrema(o_.transpose() * o_).lambda_max;
}

Matrix BatchModel::Q() const {
  const int w = window_size();
  Matrix q(w, z_size());
  q.leftCols(n()) = o_;
  q.rightCols(w) = Matrix::Identity(w, w);
  return q;
}

Vector BatchModel::apply_q(const Vector& z) const {
  if (z.size() != z_size()) {
    throw UsageError("apply_q: z has length " + std::to_string(z.size()) +
                     ", expected " + std::to_string(z_size()));
  }
  return o_ * z.head(n()) + z.tail(window_size());
}

Vector BatchModel::apply_qt(const Vector& r) const {
  if (r.size() != window_size()) {
    throw UsageError("apply_qt: residual has length " +
                     std::to_string(r.size()) + ", expected " +
                     std::to_string(window_size()));
  }
  Vector out(z_size());
  out.head(n()) = o_.transpose() * r;
  out.tail(window_size()) = r;
  return out;
}

BatchModel build_batch_model(const LtiSystem& sys, int tau) {
  return BatchModel(sys, tau);
}

AugmentedModel build_augmented_model(const LtiSystem& sys, int tau) {
  const int n = sys.n();
  const int p = sys.p();
  const int m = sys.m();
  if (tau < 1 || tau > n) {
    throw UsageError("build_augmented_model: tau = " + std::to_string(tau) +
                     " outside [1, n = " + std::to_string(n) + "]");
  }
  const int big = n + p * tau;
  AugmentedModel aug;
  aug.n = n;
  aug.p = p;
  aug.m = m;
  aug.tau = tau;
  aug.Abar = Matrix::Zero(big, big);
  aug.Bbar = Matrix::Zero(big, m * tau + p);

  // powers[j] = A^j, j = 0 .. tau.
  std::vector<Matrix> powers(static_cast<std::size_t>(tau) + 1);
  powers[0] = Matrix::Identity(n, n);
  for (int j = 1; j <= tau; ++j) {
    powers[static_cast<std::size_t>(j)] = powers[static_cast<std::size_t>(j - 1)] * sys.A();
  }

  aug.Abar.topLeftCorner(n, n) = sys.A();
  for (int slot = 0; slot + 1 < tau; ++slot) {
    aug.Abar.block(n + slot * p, n + (slot + 1) * p, p, p) =
        Matrix::Identity(p, p);
  }
  const int last = n + (tau - 1) * p;
  aug.Abar.block(last, 0, p, n) = -sys.C() * powers[static_cast<std::size_t>(tau)];

  if (m > 0) {
    aug.Bbar.block(0, 0, n, m) = sys.B();
    // a(t) = y(t) - C A^tau x(t-tau) - sum_j C A^(tau-1-j) B u(t-tau+j).
    for (int j = 0; j < tau; ++j) {
      aug.Bbar.block(last, j * m, p, m) =
          -sys.C() * powers[static_cast<std::size_t>(tau - 1 - j)] * sys.B();
    }
  }
  aug.Bbar.block(last, m * tau, p, p) = Matrix::Identity(p, p);
  return aug;
}

PlantTrajectory simulate_plant(const LtiSystem& sys, const Vector& x0,
                               const std::vector<Vector>& inputs,
                               const std::vector<Vector>& attacks,
                               const std::vector<Vector>& noise) {
  const std::size_t horizon = inputs.size();
  if (!attacks.empty() && attacks.size() != horizon) {
    throw UsageError("simulate_plant: attack sequence length differs from inputs");
  }
  if (!noise.empty() && noise.size() != horizon) {
    throw UsageError("simulate_plant: noise sequence length differs from inputs");
  }
  if (x0.size() != sys.n()) {
    throw UsageError("simulate_plant: x0 has wrong length");
  }
  PlantTrajectory traj;
  traj.states.reserve(horizon);
  traj.outputs.reserve(horizon);
  Vector x = x0;
  for (std::size_t t = 0; t < horizon; ++t) {
    if (inputs[t].size() != sys.m()) {
      throw UsageError("simulate_plant: input " + std::to_string(t) + " has wrong length");
    }
    Vector y = sys.C() * x;
    if (!attacks.empty()) {
      if (attacks[t].size() != sys.p()) {
        throw UsageError("simulate_plant: attack " + std::to_string(t) + " has wrong length");
      }
      y += attacks[t];
    }
    if (!noise.empty()) {
      if (noise[t].size() != sys.p()) {
        throw UsageError("simulate_plant: noise " + std::to_string(t) + " has wrong length");
      }
      y += noise[t];
    }
    traj.states.push_back(x);
    traj.outputs.push_back(std::move(y));
    x = sys.A() * x + sys.B() * inputs[t];
  }
  traj.final_state = x;
  return traj;
}

MeasurementWindow make_window(const std::vector<Vector>& outputs,
                              const std::vector<Vector>& inputs,
                              const BatchModel& model, int t) {
  const int tau = model.tau();
  const int p = model.p();
  const int m = model.m();
  if (t < tau - 1) {
    throw UsageError("make_window: t = " + std::to_string(t) +
                     " has fewer than tau samples of history");
  }
  if (static_cast<int>(outputs.size()) <= t) {
    throw UsageError("make_window: outputs do not reach t = " + std::to_string(t));
  }
  if (m > 0 && static_cast<int>(inputs.size()) < t) {
    throw UsageError("make_window: inputs do not reach t - 1");
  }
  MeasurementWindow w;
  Vector ytilde(p * tau);
  w.U = Vector::Zero(m * tau);
  for (int j = 0; j < tau; ++j) {
    const int ts = t - tau + 1 + j;
    const Vector& y = outputs[static_cast<std::size_t>(ts)];
    if (y.size() != p) {
      throw UsageError("make_window: output has wrong length");
    }
    ytilde.segment(j * p, p) = y;
    if (m > 0 && ts < static_cast<int>(inputs.size())) {
      const Vector& u = inputs[static_cast<std::size_t>(ts)];
      if (u.size() != m) {
        throw UsageError("make_window: input has wrong length");
      }
      w.U.segment(j * m, m) = u;
    }
  }
  w.Y = m > 0 ? Vector(ytilde - model.F() * w.U) : ytilde;
  return w;
}

Vector roll_forward(const LtiSystem& sys, const Vector& x_delayed,
                    const std::vector<Vector>& inputs, int t, int tau) {
  Vector x = x_delayed;
  for (int k = t - tau + 1; k < t; ++k) {
    x = sys.A() * x;
    if (sys.m() > 0) {
      x += sys.B() * inputs.at(static_cast<std::size_t>(k));
    }
  }
  return x;
}

}  // namespace secobs
