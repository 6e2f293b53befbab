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

// Projection onto R^n x S_s, where S_s holds the stacked attack windows
// whose per-step blocks share a common support of at most s sensors.

#pragma once

#include "secobs/numerics.hpp"
#include "secobs/support.hpp"

namespace secobs {

/// Attack window E of length p * tau together with its block layout.
class CyclicSparseVector {
 public:
  CyclicSparseVector(Vector data, int p, int tau);

  const Vector& data() const { return data_; }
  int p() const { return p_; }
  int tau() const { return tau_; }

  /// Entry for sensor i at window slot j.
  double at(int sensor, int slot) const { return data_(slot * p_ + sensor); }

  /// Sensors with nonzero row energy.
  SupportSet support() const;
  bool is_member(int s) const { return static_cast<int>(support().size()) <= s; }

 private:
  Vector data_;
  int p_;
  int tau_;
};

/// Per-sensor energy: out(i) = sum_j E[j*p + i]^2.
Vector row_energy(const Vector& e, int p, int tau);

/// The s sensors of largest energy; ties at the boundary keep the smaller
/// index. Returned in increasing index order.
SupportSet top_energy_sensors(const Vector& energy, int s);

/// Zeroes every sensor row outside the s largest-energy rows.
Vector project_attack(const Vector& e, int p, int tau, int s);

/// Pi(x, E) = (x, Pi'(E)) for z = (x, E) with x of length n.
Vector project(const Vector& z, int n, int p, int tau, int s);

/// In-place variant used by the solvers' inner loops.
void project_in_place(Vector& z, int n, int p, int tau, int s);

/// Confined variants: only sensors in `attackable` may carry attack
/// energy (all others are zeroed). An empty set means every sensor.
Vector project_attack(const Vector& e, int p, int tau, int s, const SupportSet& attackable);
Vector project(const Vector& z, int n, int p, int tau, int s, const SupportSet& attackable);
void project_in_place(Vector& z, int n, int p, int tau, int s, const SupportSet& attackable);

}  // namespace secobs
