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

// Plant description and the batch / augmented matrices built from it.
//
// Window layout used everywhere in the library: a stacked vector over a
// window of tau steps is ordered oldest-first, and the entry for sensor i at
// window slot j lives at index j * p + i. The combined estimate vector z is
// (x, E) with the n state entries first.

#pragma once

#include <vector>

#include "secobs/numerics.hpp"

namespace secobs {

/// x(t+1) = A x(t) + B u(t),  y(t) = C x(t) + a(t).
class LtiSystem {
 public:
  LtiSystem(Matrix a, Matrix b, Matrix c);

  const Matrix& A() const { return a_; }
  const Matrix& B() const { return b_; }
  const Matrix& C() const { return c_; }

  int n() const { return static_cast<int>(a_.rows()); }
  int m() const { return static_cast<int>(b_.cols()); }
  int p() const { return static_cast<int>(c_.rows()); }

  friend bool operator==(const LtiSystem& l, const LtiSystem& r) {
    return same_entries(l.a_, r.a_) && same_entries(l.b_, r.b_) && same_entries(l.c_, r.c_);
  }

 private:
  Matrix a_;
  Matrix b_;
  Matrix c_;
};

/// Batch formulation over a window of `tau` samples: Y = Q z with
/// Q = [O I], O = [C; CA; ...; CA^(tau-1)] and Y = Ytilde - F U.
class BatchModel {
 public:
  BatchModel(LtiSystem sys, int tau);

  const LtiSystem& sys() const { return sys_; }
  int tau() const { return tau_; }
  int n() const { return sys_.n(); }
  int p() const { return sys_.p(); }
  int m() const { return sys_.m(); }
  int window_size() const { return p() * tau_; }
  int z_size() const { return n() + window_size(); }

  const Matrix& O() const { return o_; }
  const Matrix& F() const { return f_; }

  /// Dense [O | I]. Solvers use the structured products below instead.
  Matrix Q() const;

  /// Q z = O x + E.
  Vector apply_q(const Vector& z) const;
  /// Q^T r = (O^T r, r).
  Vector apply_qt(const Vector& r) const;

  /// lambda_max(Q^T Q) = 1 + lambda_max(O^T O), since Q Q^T = I + O O^T.
  double lambda_max_qtq() const { return lambda_max_; }

 private:
  LtiSystem sys_;
  int tau_;
  Matrix o_;
  Matrix f_;
  double lambda_max_ = 0.0;
};

BatchModel build_batch_model(const LtiSystem& sys, int tau);

/// z(t) = Abar z(t-1) + Bbar ubar(t-1) with ubar(t-1) = (U(t-1), y(t)),
/// U(t-1) = (u(t-tau), ..., u(t-1)).
struct AugmentedModel {
  Matrix Abar;
  Matrix Bbar;
  int n = 0;
  int p = 0;
  int m = 0;
  int tau = 0;
};

AugmentedModel build_augmented_model(const LtiSystem& sys, int tau);

struct PlantTrajectory {
  std::vector<Vector> states;   // x(0) .. x(T-1)
  std::vector<Vector> outputs;  // y(0) .. y(T-1)
  Vector final_state;           // x(T)
};

/// Open-loop simulation: x(t+1) = A x + B u, y = C x + a + noise.
/// `attacks` and `noise` may be empty (none); otherwise every sequence has
/// length T.
PlantTrajectory simulate_plant(const LtiSystem& sys, const Vector& x0,
                               const std::vector<Vector>& inputs,
                               const std::vector<Vector>& attacks,
                               const std::vector<Vector>& noise);

struct MeasurementWindow {
  Vector Y;  // Ytilde - F U, length p * tau
  Vector U;  // u(t-tau+1) .. u(t), length m * tau
};

/// Window ending at time t (needs t >= tau - 1). `inputs` must cover
/// u(0) .. u(t-1); u(t) is taken as zero when absent since the last block
/// column of F vanishes.
MeasurementWindow make_window(const std::vector<Vector>& outputs,
                              const std::vector<Vector>& inputs,
                              const BatchModel& model, int t);

/// Propagates a delayed estimate x(t-tau+1) to x(t) through the known
/// dynamics, using u(t-tau+1) .. u(t-1).
Vector roll_forward(const LtiSystem& sys, const Vector& x_delayed,
                    const std::vector<Vector>& inputs, int t, int tau);

}  // namespace secobs
