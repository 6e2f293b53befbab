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

#include "secobs/simulation.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "secobs/log.hpp"
#include "secobs/observability.hpp"
#include "secobs/projection.hpp"

namespace secobs {

// ---------------------------------------------------------------------------
// Ground vehicle

std::pair<Matrix, Matrix> zoh_damped_integrator(double damping, double gain, double ts) {
  if (!(ts > 0.0) || !(damping >= 0.0)) {
    throw UsageError("zoh_damped_integrator: need ts > 0 and damping >= 0");
  }
  // phi1 = int_0^ts e^{-c s} ds,  phi2 = int_0^ts phi1(s) ds.
  double phi1 = ts;
  double phi2 = 0.5 * ts * ts;
  const double ct = damping * ts;
  if (ct > 1e-3) {
    phi1 = -std::expm1(-ct) / damping;
    phi2 = (ts - phi1) / damping;
  } else if (ct > 0.0) {
    phi1 = ts * (1.0 - ct / 2.0 + ct * ct / 6.0 - ct * ct * ct / 24.0);
    phi2 = ts * ts * (0.5 - ct / 6.0 + ct * ct / 24.0 - ct * ct * ct / 120.0);
  }
  Matrix a(2, 2);
  a << 1.0, phi1, 0.0, std::exp(-ct);
  Matrix b(2, 1);
  b << gain * phi2, gain * phi1;
  return {a, b};
}

LtiSystem ugv_system(const UgvParams& prm) {
  if (!(prm.mass > 0.0) || !(prm.inertia > 0.0) || !(prm.sample_period > 0.0)) {
    throw UsageError("ugv_system: mass, inertia and sample period must be positive");
  }
  if (!(prm.friction >= 0.0) || !(prm.rot_friction >= 0.0)) {
    throw UsageError("ugv_system: friction coefficients must be non-negative");
  }
  const auto [at, bt] =
      zoh_damped_integrator(prm.friction / prm.mass, 1.0 / prm.mass, prm.sample_period);
  const auto [ar, br] =
      zoh_damped_integrator(prm.rot_friction / prm.inertia, 1.0 / prm.inertia, prm.sample_period);
  Matrix a = Matrix::Zero(4, 4);
  a.topLeftCorner(2, 2) = at;
  a.bottomRightCorner(2, 2) = ar;
  Matrix b = Matrix::Zero(4, 2);
  b.block(0, 0, 2, 1) = bt;
  b.block(2, 1, 2, 1) = br;
  Matrix c(5, 4);
  c << 1, 0, 0, 0,
       0, 1, 0, 0,
       0, 1, 0, 0,
       0, 0, 1, 0,
       0, 0, 0, 1;
  return LtiSystem(a, b, c);
}

std::vector<SupportSet> ugv_sensor_groups() {
  return {SupportSet{0}, SupportSet{1}, SupportSet{2}, SupportSet{3, 4}};
}

Matrix place_poles_single_input(const Matrix& a, const Matrix& b,
                                const std::vector<double>& discrete_poles) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n || b.rows() != n || b.cols() != 1 ||
      static_cast<int>(discrete_poles.size()) != n) {
    throw UsageError("place_poles_single_input: dimension mismatch");
  }
  Matrix wc(n, n);
  Matrix col = b;
  for (int j = 0; j < n; ++j) {
    wc.col(j) = col;
    col = a * col;
  }
  if (rank(wc) < n) {
    throw UsageError("place_poles_single_input: pair is not controllable");
  }
  Matrix phi = Matrix::Identity(n, n);
  for (double pole : discrete_poles) {
    phi = phi * (a - pole * Matrix::Identity(n, n));
  }
  Matrix last = Matrix::Zero(1, n);
  last(0, n - 1) = 1.0;
  return last * wc.inverse() * phi;
}

Matrix ugv_feedback_gain(const UgvParams& prm, const std::array<double, 2>& translation_poles,
                         const std::array<double, 2>& rotation_poles) {
  const double ts = prm.sample_period;
  const auto [at, bt] = zoh_damped_integrator(prm.friction / prm.mass, 1.0 / prm.mass, ts);
  const auto [ar, br] =
      zoh_damped_integrator(prm.rot_friction / prm.inertia, 1.0 / prm.inertia, ts);
  auto disc = [ts](const std::array<double, 2>& poles) {
    return std::vector<double>{std::exp(poles[0] * ts), std::exp(poles[1] * ts)};
  };
  Matrix k = Matrix::Zero(2, 4);
  k.block(0, 0, 1, 2) = place_poles_single_input(at, bt, disc(translation_poles));
  k.block(1, 2, 1, 2) = place_poles_single_input(ar, br, disc(rotation_poles));
  return k;
}

std::vector<std::array<double, 2>> planar_path(const std::vector<Vector>& states) {
  std::vector<std::array<double, 2>> out;
  out.reserve(states.size());
  std::array<double, 2> pos{0.0, 0.0};
  for (std::size_t k = 0; k < states.size(); ++k) {
    if (k > 0) {
      const double dx = states[k](0) - states[k - 1](0);
      const double heading = states[k - 1](2);
      pos[0] += dx * std::cos(heading);
      pos[1] += dx * std::sin(heading);
    }
    out.push_back(pos);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Attacks

const char* to_string(AttackKind k) {
  switch (k) {
    case AttackKind::none:
      return "none";
    case AttackKind::random_noise:
      return "random_noise";
    case AttackKind::step_ramp:
      return "step_ramp";
    case AttackKind::replay:
      return "replay";
  }
  return "none";
}

AttackKind attack_kind_from_string(const std::string& s) {
  if (s == "none") return AttackKind::none;
  if (s == "random_noise") return AttackKind::random_noise;
  if (s == "step_ramp") return AttackKind::step_ramp;
  if (s == "replay") return AttackKind::replay;
  throw UsageError("unknown attack kind '" + s + "'");
}

const AttackInterval* AttackPolicy::active(int t) const {
  for (const auto& iv : schedule) {
    if (t >= iv.start && t < iv.end) {
      return &iv;
    }
  }
  return nullptr;
}

void AttackPolicy::validate(int p) const {
  if (delay < 1) {
    throw UsageError("attack: replay delay must be >= 1");
  }
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    const auto& iv = schedule[i];
    if (iv.end < iv.start) {
      throw UsageError("attack: interval end precedes start");
    }
    iv.sensors.check_bound(p);
    if (static_cast<int>(iv.sensors.size()) > declared_s) {
      throw UsageError("attack: interval " + std::to_string(i) + " attacks " +
                       std::to_string(iv.sensors.size()) + " sensors, above declared s = " +
                       std::to_string(declared_s));
    }
    for (std::size_t j = 0; j < i; ++j) {
      const auto& o = schedule[j];
      if (iv.start < o.end && o.start < iv.end) {
        throw UsageError("attack: overlapping schedule intervals");
      }
    }
  }
}

Vector generate_attack(const AttackPolicy& policy, int t, int p,
                       const std::vector<Vector>& clean_history, Rng& rng) {
  Vector a = Vector::Zero(p);
  if (policy.kind == AttackKind::none) {
    return a;
  }
  const AttackInterval* iv = policy.active(t);
  if (iv == nullptr) {
    return a;
  }
  switch (policy.kind) {
    case AttackKind::random_noise: {
      std::normal_distribution<double> dist(0.0, policy.noise_scale);
      for (int i : iv->sensors.indices()) {
        a(i) = dist(rng);
      }
      break;
    }
    case AttackKind::step_ramp: {
      const double v = policy.level + policy.slope * static_cast<double>(t - iv->start);
      for (int i : iv->sensors.indices()) {
        a(i) = v;
      }
      break;
    }
    case AttackKind::replay: {
      const int src = t - policy.delay;
      if (src < 0 || static_cast<int>(clean_history.size()) <= t) {
        log::warn("replay attack at t = {}: no recorded measurement {} steps back", t,
                  policy.delay);
        break;
      }
      const Vector& now = clean_history[static_cast<std::size_t>(t)];
      const Vector& old = clean_history[static_cast<std::size_t>(src)];
      for (int i : iv->sensors.indices()) {
        a(i) = old(i) - now(i);
      }
      break;
    }
    case AttackKind::none:
      break;
  }
  return a;
}

// ---------------------------------------------------------------------------
// Scenarios

Vector ReferenceSpec::at(int t, int n) const {
  if (kind == Kind::constant) {
    if (value.size() == 0) {
      return Vector::Zero(n);
    }
    if (value.size() != n) {
      throw UsageError("reference: constant value has wrong length");
    }
    return value;
  }
  if (n != 4) {
    throw UsageError("reference: ugv_square needs the 4-state vehicle model");
  }
  const int period = move_steps + rotate_steps;
  const int leg = std::min(t / period, legs - 1);
  const int phase = t - leg * period;
  const bool done = t >= duration();
  const double quarter = std::numbers::pi / 2.0;
  Vector r = Vector::Zero(4);
  r(0) = side * static_cast<double>(leg + 1);
  r(2) = quarter * static_cast<double>((done || phase >= move_steps) ? leg + 1 : leg);
  return r;
}

bool operator==(const ReferenceSpec& l, const ReferenceSpec& r) {
  return l.kind == r.kind && same_entries(l.value, r.value) && l.side == r.side &&
         l.move_steps == r.move_steps && l.rotate_steps == r.rotate_steps && l.legs == r.legs;
}

const char* to_string(EstimatorKind k) {
  switch (k) {
    case EstimatorKind::etpg:
      return "etpg";
    case EstimatorKind::etpl:
      return "etpl";
    case EstimatorKind::oracle:
      return "oracle";
  }
  return "etpg";
}

EstimatorKind estimator_kind_from_string(const std::string& s) {
  if (s == "etpg") return EstimatorKind::etpg;
  if (s == "etpl") return EstimatorKind::etpl;
  if (s == "oracle") return EstimatorKind::oracle;
  throw UsageError("unknown estimator '" + s + "'");
}

void Scenario::validate() const {
  const int n = sys.n();
  const int p = sys.p();
  if (tau < 1 || tau > n) {
    throw UsageError("scenario: tau outside [1, n]");
  }
  if (horizon < 1) {
    throw UsageError("scenario: horizon must be >= 1");
  }
  if (x0.size() != n) {
    throw UsageError("scenario: x0 has wrong length");
  }
  if (noise_std.size() != 0 && noise_std.size() != p) {
    throw UsageError("scenario: noise_std must have one entry per sensor");
  }
  if (noise_std.size() != 0 && (noise_std.array() < 0.0).any()) {
    throw UsageError("scenario: negative noise standard deviation");
  }
  if (estimator.s < 0 || estimator.s > p) {
    throw UsageError("scenario: estimator s outside [0, p]");
  }
  if (controller.kind == ControllerSpec::Kind::state_feedback &&
      (controller.K.rows() != sys.m() || controller.K.cols() != n)) {
    throw UsageError("scenario: controller gain must be m x n");
  }
  attack.validate(p);
  estimator.attackable.check_bound(p);
}

namespace {

Vector newest_block(const Vector& z, int n, int p, int tau) {
  return z.segment(n + (tau - 1) * p, p);
}

}  // namespace

ScenarioResult run_scenario(const Scenario& sc) {
  sc.validate();
  const LtiSystem& sys = sc.sys;
  const int n = sys.n();
  const int p = sys.p();
  const int m = sys.m();
  const int tau = sc.tau;
  const int s = sc.estimator.s;
  const BatchModel model = build_batch_model(sys, tau);

  ScenarioResult res;
  if (2 * s <= p) {
    try {
      if (!is_sparse_observable(sys, 2 * s, sc.estimator.attackable)) {
        res.warnings.push_back("plant is not " + std::to_string(2 * s) +
                               "-sparse observable; reconstruction is not guaranteed");
      }
    } catch (const CombinatorialGuardError& e) {
      res.warnings.push_back(e.what());
    }
  } else {
    res.warnings.push_back("2s exceeds the sensor count; reconstruction is not guaranteed");
  }
  for (const auto& w : res.warnings) {
    log::warn("{}", w);
  }

  std::optional<ProjectedObserver> observer;
  std::optional<ObserverState> obs_state;
  EtpgConfig etpg_cfg = sc.estimator.etpg;
  EtplConfig etpl_cfg = sc.estimator.etpl;
  OracleConfig oracle_cfg = sc.estimator.oracle;
  etpg_cfg.attackable = etpl_cfg.attackable = oracle_cfg.attackable = sc.estimator.attackable;
  if (sc.estimator.kind == EstimatorKind::etpl) {
    observer.emplace(model, build_augmented_model(sys, tau), s, etpl_cfg);
  }

  Rng rng(sc.seed);
  std::vector<double> noise_sd(static_cast<std::size_t>(p), 0.0);
  for (int i = 0; i < sc.noise_std.size(); ++i) {
    noise_sd[static_cast<std::size_t>(i)] = sc.noise_std(i);
  }

  std::vector<Vector> clean, outputs, inputs, states, attacks;
  Vector x = sc.x0;
  Vector z_hat;  // last estimate, reused when a step yields none
  const double nan = std::numeric_limits<double>::quiet_NaN();

  for (int t = 0; t < sc.horizon; ++t) {
    clean.push_back(sys.C() * x);
    Vector a = generate_attack(sc.attack, t, p, clean, rng);
    Vector y = clean.back() + a;
    for (int i = 0; i < p; ++i) {
      if (noise_sd[static_cast<std::size_t>(i)] > 0.0) {
        y(i) += std::normal_distribution<double>(0.0, noise_sd[static_cast<std::size_t>(i)])(rng);
      }
    }
    outputs.push_back(y);
    states.push_back(x);
    attacks.push_back(a);

    TraceRow row;
    row.t = t;
    row.x_true = x;
    row.a_true = a;
    row.x_hat = Vector::Constant(n, nan);
    row.a_hat = Vector::Constant(p, nan);
    row.v_lyap = nan;
    StepInfo info;

    if (t >= tau - 1) {
      const MeasurementWindow win = make_window(outputs, inputs, model, t);
      const auto t0 = std::chrono::steady_clock::now();
      bool have = false;
      switch (sc.estimator.kind) {
        case EstimatorKind::etpg: {
          const Estimate est = etpg_solve(model, win.Y, s, etpg_cfg);
          z_hat = est.z();
          have = true;
          info.converged = est.converged;
          info.status = to_string(est.status);
          info.outer_iters = est.outer_iters;
          row.inner_iters = est.inner_iters_total;
          row.v_lyap = est.final_v;
          break;
        }
        case EstimatorKind::oracle: {
          const DecodeResult dec = brute_force_decode(model, win.Y, s, oracle_cfg);
          info.status = to_string(dec.status);
          info.converged = dec.status == DecodeStatus::unique;
          if (dec.status != DecodeStatus::infeasible) {
            z_hat.resize(model.z_size());
            z_hat << dec.x, dec.E;
            have = true;
            row.v_lyap = lyapunov_v(model, win.Y, z_hat);
          } else if (z_hat.size() > 0) {
            have = true;
            row.v_lyap = lyapunov_v(model, win.Y, z_hat);
          }
          if (!info.converged) {
            log::debug("t = {}: {}", t, dec.diagnostic);
          }
          break;
        }
        case EstimatorKind::etpl: {
          if (!obs_state) {
            obs_state = observer->init(win.Y);
          } else {
            Vector u_prev(m * tau);
            for (int j = 0; j < tau; ++j) {
              u_prev.segment(j * m, m) = inputs[static_cast<std::size_t>(t - tau + j)];
            }
            obs_state = observer->step(*obs_state, u_prev, y, win.Y);
          }
          z_hat = obs_state->z_hat;
          have = true;
          info.status = to_string(obs_state->status);
          info.converged = obs_state->status != StepStatus::non_decreasing;
          info.outer_iters = obs_state->meas_rounds;
          row.inner_iters = obs_state->inner_iters;
          row.v_lyap = obs_state->last_V;
          break;
        }
      }
      row.step_wall_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
      if (!info.converged) {
        res.all_converged = false;
      }
      res.final_converged = info.converged;
      res.final_status = info.status;
      if (have) {
        info.has_estimate = true;
        info.z_hat = z_hat;
        row.x_hat = roll_forward(sys, z_hat.head(n), inputs, t, tau);
        row.a_hat = newest_block(z_hat, n, p, tau);
      }
      info.z_true.resize(model.z_size());
      info.z_true.head(n) = states[static_cast<std::size_t>(t - tau + 1)];
      for (int j = 0; j < tau; ++j) {
        info.z_true.segment(n + j * p, p) = attacks[static_cast<std::size_t>(t - tau + 1 + j)];
      }
    }

    Vector u = Vector::Zero(m);
    if (sc.controller.kind == ControllerSpec::Kind::state_feedback && info.has_estimate) {
      u = -sc.controller.K * (row.x_hat - sc.controller.reference.at(t, n));
    }
    inputs.push_back(u);
    x = sys.A() * x + sys.B() * u;

    res.rows.push_back(std::move(row));
    res.info.push_back(std::move(info));
  }
  res.final_state = x;
  return res;
}

Scenario ugv_square_scenario(EstimatorKind estimator, AttackKind attack, double noise_std,
                             std::uint64_t seed) {
  const UgvParams prm;
  Scenario sc(ugv_system(prm));
  sc.ugv = prm;
  sc.tau = 4;
  sc.x0 = Vector::Zero(4);

  sc.controller.kind = ControllerSpec::Kind::state_feedback;
  sc.controller.K = ugv_feedback_gain(prm);
  sc.controller.reference.kind = ReferenceSpec::Kind::ugv_square;
  sc.controller.reference.side = 5.0;
  sc.controller.reference.move_steps = 200;
  sc.controller.reference.rotate_steps = 200;
  sc.horizon = sc.controller.reference.duration() + 200;

  // Alternate between the two encoders, switching at the start of each leg.
  sc.attack.kind = attack;
  sc.attack.declared_s = 1;
  sc.attack.level = 2.0;
  sc.attack.slope = 0.01;
  sc.attack.noise_scale = 1.0;
  sc.attack.delay = 40;
  const int dwell = sc.controller.reference.move_steps + sc.controller.reference.rotate_steps;
  for (int start = 0, k = 0; start < sc.horizon; start += dwell, ++k) {
    sc.attack.schedule.push_back(
        {start, std::min(sc.horizon, start + dwell), SupportSet{k % 2 == 0 ? 1 : 2}});
  }

  if (noise_std > 0.0) {
    sc.noise_std = Vector::Constant(5, noise_std);
  }
  sc.estimator.kind = estimator;
  sc.estimator.s = 1;
  sc.estimator.attackable = SupportSet{1, 2};
  const double window = 5.0 * sc.tau;
  sc.estimator.etpg.eps_terminate =
      noise_std > 0.0 ? 0.5 * window * noise_std * noise_std : 1e-16;
  sc.estimator.etpg.max_outer = 100000;
  sc.estimator.etpg.trace_inner = false;
  sc.estimator.etpl.v_floor = noise_std > 0.0 ? 0.5 * window * noise_std * noise_std : 1e-20;
  sc.seed = seed;
  return sc;
}

}  // namespace secobs
