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

// Closed-loop simulation harness: attack generators, the ground-vehicle
// plant, and a scenario runner that feeds one of the estimators and closes
// the loop with a state-feedback tracking controller.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "secobs/etpg.hpp"
#include "secobs/etpl.hpp"
#include "secobs/oracle.hpp"
#include "secobs/support.hpp"
#include "secobs/system_model.hpp"

namespace secobs {

using Rng = std::mt19937_64;

// ---------------------------------------------------------------------------
// Ground vehicle

struct UgvParams {
  double mass = 10.0;           // M [kg]
  double inertia = 1.0;         // J [kg m^2]
  double friction = 1.0;        // B [N s / m]
  double rot_friction = 0.1;    // B_r [N m s]
  double sample_period = 0.05;  // Ts [s]

  friend bool operator==(const UgvParams&, const UgvParams&) = default;
};

/// Zero-order-hold discretization of one chain  q' = w, w' = -c w + g u.
/// Returns (A, b) with A 2x2 and b 2x1.
std::pair<Matrix, Matrix> zoh_damped_integrator(double damping, double gain, double ts);

/// States (x, v, theta, omega); inputs (F, T); sensors
/// GPS x, encoder v, encoder v, IMU theta, IMU omega.
LtiSystem ugv_system(const UgvParams& params);

/// Sensor groups of the ground vehicle with the IMU's two channels treated
/// as one physical device: {0}, {1}, {2}, {3, 4}.
std::vector<SupportSet> ugv_sensor_groups();

/// Default closed-loop poles (continuous time, rad/s) for each chain.
inline constexpr std::array<double, 2> kUgvTranslationPoles{-1.5, -2.0};
inline constexpr std::array<double, 2> kUgvRotationPoles{-2.0, -2.5};

/// Single-input pole placement (Ackermann) to the given discrete poles.
Matrix place_poles_single_input(const Matrix& a, const Matrix& b,
                                const std::vector<double>& discrete_poles);

/// Block-diagonal 2x4 gain for the vehicle from continuous-time poles.
Matrix ugv_feedback_gain(const UgvParams& params,
                         const std::array<double, 2>& translation_poles = kUgvTranslationPoles,
                         const std::array<double, 2>& rotation_poles = kUgvRotationPoles);

/// Planar (east, north) positions obtained by advancing along the heading
/// theta by each increment of the path coordinate x.
std::vector<std::array<double, 2>> planar_path(const std::vector<Vector>& states);

// ---------------------------------------------------------------------------
// Attacks

enum class AttackKind { none, random_noise, step_ramp, replay };

const char* to_string(AttackKind k);
AttackKind attack_kind_from_string(const std::string& s);

/// Sensors attacked during [start, end).
struct AttackInterval {
  int start = 0;
  int end = 0;
  SupportSet sensors;

  friend bool operator==(const AttackInterval&, const AttackInterval&) = default;
};

struct AttackPolicy {
  AttackKind kind = AttackKind::none;
  std::vector<AttackInterval> schedule;
  double noise_scale = 1.0;  // random_noise standard deviation
  double level = 0.0;        // step_ramp: level + slope * (t - start)
  double slope = 0.0;
  int delay = 1;             // replay delay in steps
  int declared_s = 0;        // cap on the active support size

  /// Active interval at time t, if any.
  const AttackInterval* active(int t) const;
  /// Throws UsageError on overlapping intervals or supports above declared_s.
  void validate(int p) const;

  friend bool operator==(const AttackPolicy&, const AttackPolicy&) = default;
};

/// Additive attack a(t). `clean_history` holds C x(k) for k = 0..t.
/// Replay sets a(t) = y_clean(t - delay) - y_clean(t) so the attacked
/// channel reports the old measurement.
Vector generate_attack(const AttackPolicy& policy, int t, int p,
                       const std::vector<Vector>& clean_history, Rng& rng);

// ---------------------------------------------------------------------------
// Scenarios

struct ReferenceSpec {
  enum class Kind { constant, ugv_square };
  Kind kind = Kind::constant;
  Vector value;           // constant reference (length n), empty = zero
  double side = 5.0;      // square side [m]
  int move_steps = 200;   // steps per straight leg
  int rotate_steps = 200; // steps per 90 degree turn
  int legs = 4;

  Vector at(int t, int n) const;
  /// Steps needed to complete the path.
  int duration() const { return legs * (move_steps + rotate_steps); }

  friend bool operator==(const ReferenceSpec& l, const ReferenceSpec& r);
};

struct ControllerSpec {
  enum class Kind { none, state_feedback };
  Kind kind = Kind::none;
  Matrix K;
  ReferenceSpec reference;

  friend bool operator==(const ControllerSpec& l, const ControllerSpec& r) {
    return l.kind == r.kind && same_entries(l.K, r.K) && l.reference == r.reference;
  }
};

enum class EstimatorKind { etpg, etpl, oracle };

const char* to_string(EstimatorKind k);
EstimatorKind estimator_kind_from_string(const std::string& s);

struct EstimatorSpec {
  EstimatorKind kind = EstimatorKind::etpg;
  int s = 0;
  /// Sensors that may be attacked; empty means all. Copied into the
  /// solver configs by run_scenario.
  SupportSet attackable;
  EtpgConfig etpg;
  EtplConfig etpl;
  OracleConfig oracle;

  friend bool operator==(const EstimatorSpec&, const EstimatorSpec&) = default;
};

struct Scenario {
  explicit Scenario(LtiSystem s) : sys(std::move(s)) {}

  LtiSystem sys;
  int tau = 1;
  int horizon = 1;
  Vector x0;
  ControllerSpec controller;
  AttackPolicy attack;
  Vector noise_std;  // per sensor; empty = noiseless
  EstimatorSpec estimator;
  std::uint64_t seed = 0;
  /// Set when the plant came from ugv_system (kept for round-tripping).
  std::optional<UgvParams> ugv;

  void validate() const;

  friend bool operator==(const Scenario& l, const Scenario& r) {
    return l.sys == r.sys && l.tau == r.tau && l.horizon == r.horizon &&
           same_entries(l.x0, r.x0) && l.controller == r.controller && l.attack == r.attack &&
           same_entries(l.noise_std, r.noise_std) && l.estimator == r.estimator &&
           l.seed == r.seed && l.ugv == r.ugv;
  }
};

/// Serialized trace columns.
struct TraceRow {
  int t = 0;
  Vector x_true;  // x(t)
  Vector x_hat;   // estimate of x(t) rolled forward from x(t - tau + 1)
  Vector a_true;  // a(t)
  Vector a_hat;   // newest attack block of the estimate
  double v_lyap = 0.0;
  long long inner_iters = 0;
  long long step_wall_ns = 0;
};

/// Per-step diagnostics that are not part of the CSV trace.
struct StepInfo {
  bool has_estimate = false;
  bool converged = false;
  std::string status;
  Vector z_hat;   // (x(t-tau+1), E(t)) estimate
  Vector z_true;  // (x(t-tau+1), E(t)) ground truth
  int outer_iters = 0;
};

struct ScenarioResult {
  std::vector<TraceRow> rows;
  std::vector<StepInfo> info;
  Vector final_state;  // x(horizon)
  /// Every estimator step reported convergence / a unique decode /
  /// a strict decrease.
  bool all_converged = true;
  bool final_converged = false;
  std::string final_status;
  std::vector<std::string> warnings;
};

ScenarioResult run_scenario(const Scenario& sc);

/// Noiseless UGV square-path scenario with alternating encoder attacks.
Scenario ugv_square_scenario(EstimatorKind estimator, AttackKind attack, double noise_std,
                             std::uint64_t seed = 7);

}  // namespace secobs
