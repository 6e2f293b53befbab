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

#include <gtest/gtest.h>

#include "secobs/etpl.hpp"
#include "test_util.hpp"

namespace secobs {
namespace {

using testing::Rng;

struct PlantRun {
  LtiSystem sys;
  int tau;
  std::vector<Vector> inputs;
  std::vector<Vector> attacks;
  PlantTrajectory traj;

  // True augmented state (x(t - tau + 1), E(t)).
  Vector z_true(int t) const {
    const int p = sys.p();
    Vector z(sys.n() + p * tau);
    z.head(sys.n()) = traj.states[static_cast<std::size_t>(t - tau + 1)];
    for (int j = 0; j < tau; ++j) {
      z.segment(sys.n() + j * p, p) = attacks[static_cast<std::size_t>(t - tau + 1 + j)];
    }
    return z;
  }

  Vector u_window(int t) const {
    const int m = sys.m();
    Vector u(m * tau);
    for (int j = 0; j < tau; ++j) {
      u.segment(j * m, m) = inputs[static_cast<std::size_t>(t - tau + j)];
    }
    return u;
  }
};

PlantRun make_run(const LtiSystem& sys, int tau, int steps, const SupportSet& sup, double scale,
             Rng& rng) {
  PlantRun r{sys, tau, {}, {}, {}};
  for (int t = 0; t < steps; ++t) {
    r.inputs.push_back(testing::random_vector(sys.m(), rng));
    Vector a = Vector::Zero(sys.p());
    for (int i : sup.indices()) a(i) = scale * testing::normal(rng);
    r.attacks.push_back(a);
  }
  r.traj = simulate_plant(sys, testing::random_vector(sys.n(), rng), r.inputs, r.attacks, {});
  return r;
}

TEST(Etpl, TimeUpdateIsExactOnTrueState) {
  Rng rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = testing::uniform_int(rng, 1, 3);
    const int p = testing::uniform_int(rng, 1, 4);
    const int m = testing::uniform_int(rng, 0, 2);
    const int tau = testing::uniform_int(rng, 1, n);
    const LtiSystem sys = testing::random_system(n, p, m, rng, 0.9);
    const PlantRun run = make_run(sys, tau, 12, testing::random_support(p, 1, rng), 2.0, rng);
    const ProjectedObserver obs(build_batch_model(sys, tau), build_augmented_model(sys, tau), 1);
    for (int t = tau; t < 12; ++t) {
      const Vector pred = obs.time_update(run.z_true(t - 1), run.u_window(t),
                                          run.traj.outputs[static_cast<std::size_t>(t)]);
      EXPECT_LT((pred - run.z_true(t)).norm(), 1e-9 * (1.0 + run.z_true(t).norm()));
    }
  }
}

TEST(Etpl, MeasurementUpdateMatchesDenseGain) {
  Rng rng(62);
  const LtiSystem sys = testing::random_system(2, 3, 1, rng);
  const BatchModel bm = build_batch_model(sys, 2);
  const ProjectedObserver obs(bm, build_augmented_model(sys, 2), 1);
  EXPECT_DOUBLE_EQ(obs.sigma(), 0.5 / bm.lambda_max_qtq());
  const Vector z = testing::random_vector(bm.z_size(), rng);
  const Vector y = testing::random_vector(bm.window_size(), rng);
  const Matrix q = bm.Q();
  const Vector ref = z + obs.sigma() * q.transpose() * (y - q * z);
  EXPECT_LT((obs.measurement_update(z, y) - ref).norm(), 1e-12 * (1.0 + ref.norm()));
}

TEST(Etpl, FullSupportStepIsOneLuenbergerUpdate) {
  Rng rng(63);
  const int n = 2;
  const int p = 3;
  const int tau = 2;
  const LtiSystem sys = testing::random_system(n, p, 1, rng, 0.9);
  const BatchModel bm = build_batch_model(sys, tau);
  const ProjectedObserver obs(bm, build_augmented_model(sys, tau), p);
  const PlantRun run = make_run(sys, tau, 6, SupportSet{0, 1, 2}, 1.0, rng);
  const int t = 4;
  ObserverState prev;
  prev.z_hat = testing::random_vector(bm.z_size(), rng);
  prev.last_V = 1e300;
  const Vector yw = make_window(run.traj.outputs, run.inputs, bm, t).Y;
  const Vector& y_new = run.traj.outputs[static_cast<std::size_t>(t)];
  const ObserverState next = obs.step(prev, run.u_window(t), y_new, yw);
  const Vector tu = obs.time_update(prev.z_hat, run.u_window(t), y_new);
  const Vector ref = tu + obs.sigma() * bm.Q().transpose() * (yw - bm.Q() * tu);
  EXPECT_EQ(next.status, StepStatus::decreased);
  EXPECT_EQ(next.inner_iters, 1);
  EXPECT_EQ(next.meas_rounds, 1);
  EXPECT_LT((next.z_hat - ref).norm(), 1e-10 * (1.0 + ref.norm()));
}

TEST(Etpl, ConvergesOnWellConditionedPlant) {
  Rng rng(64);
  const int p = 400;
  const LtiSystem sys = testing::spread_rotation_system(p, 0.3);
  const int tau = 1;
  const int steps = 200;
  const PlantRun run = make_run(sys, tau, steps, SupportSet{17}, 10.0, rng);
  const BatchModel bm = build_batch_model(sys, tau);
  EtplConfig cfg;
  cfg.v_floor = 1e-24;
  const ProjectedObserver obs(bm, build_augmented_model(sys, tau), 1, cfg);
  ObserverState st = obs.init(make_window(run.traj.outputs, run.inputs, bm, 0).Y);
  double first_err = (st.z_hat - run.z_true(0)).norm();
  for (int t = 1; t < steps; ++t) {
    const Vector yw = make_window(run.traj.outputs, run.inputs, bm, t).Y;
    st = obs.step(st, run.u_window(t), run.traj.outputs[static_cast<std::size_t>(t)], yw);
    EXPECT_NE(st.status, StepStatus::initialized);
  }
  const double err = (st.z_hat - run.z_true(steps - 1)).norm();
  EXPECT_LT(err, 1e-6 * first_err);
  EXPECT_EQ(st.step_count, steps - 1);
}

TEST(Etpl, ExactStartStaysAtFloor) {
  Rng rng(65);
  const LtiSystem sys = testing::random_system(2, 4, 0, rng, 0.9);
  const int tau = 2;
  const PlantRun run = make_run(sys, tau, 5, SupportSet{1}, 1.0, rng);
  const BatchModel bm = build_batch_model(sys, tau);
  EtplConfig cfg;
  cfg.v_floor = 1e-20;
  // Rounding-level changes in V must not count as a decrease.
  cfg.eps_equal = 1e-25;
  const ProjectedObserver obs(bm, build_augmented_model(sys, tau), 1, cfg);
  ObserverState st = obs.init(make_window(run.traj.outputs, run.inputs, bm, 1).Y, run.z_true(1));
  EXPECT_EQ(st.status, StepStatus::initialized);
  EXPECT_LT(st.last_V, 1e-20);
  st = obs.step(st, run.u_window(2), run.traj.outputs[2],
                make_window(run.traj.outputs, run.inputs, bm, 2).Y);
  EXPECT_EQ(st.status, StepStatus::at_floor);
  EXPECT_EQ(st.inner_iters, 0);
  EXPECT_LT((st.z_hat - run.z_true(2)).norm(), 1e-9);
}

TEST(Etpl, ReturnsBestIterateWhenNotDecreasing) {
  Rng rng(66);
  const LtiSystem sys = testing::random_system(2, 3, 0, rng, 0.9);
  const BatchModel bm = build_batch_model(sys, 2);
  EtplConfig cfg;
  cfg.max_inner = 1;
  cfg.max_meas_rounds = 1;
  const ProjectedObserver obs(bm, build_augmented_model(sys, 2), 1, cfg);
  ObserverState prev;
  prev.z_hat = Vector::Zero(bm.z_size());
  prev.last_V = 0.0;  // nothing can beat zero
  const Vector yw = testing::random_vector(bm.window_size(), rng);
  const ObserverState next = obs.step(prev, Vector(0), testing::random_vector(3, rng), yw);
  EXPECT_EQ(next.status, StepStatus::non_decreasing);
  EXPECT_NEAR(next.last_V, obs.lyapunov(next.z_hat, yw), 1e-12);
}

TEST(Etpl, ConfinedObserverKeepsAttackInsidePool) {
  Rng rng(67);
  const LtiSystem sys = testing::random_system(2, 4, 0, rng, 0.9);
  const BatchModel bm = build_batch_model(sys, 2);
  EtplConfig cfg;
  cfg.attackable = SupportSet{0, 3};
  const ProjectedObserver obs(bm, build_augmented_model(sys, 2), 1, cfg);
  const Vector yw = testing::random_vector(bm.window_size(), rng);
  const ObserverState st =
      obs.step(obs.init(yw), Vector(0), testing::random_vector(4, rng), yw);
  const SupportSet got = CyclicSparseVector(st.z_hat.tail(bm.window_size()), 4, 2).support();
  for (int i : got.indices()) EXPECT_TRUE(cfg.attackable.contains(i));
}

TEST(Etpl, ValidatesConfiguration) {
  Rng rng(68);
  const LtiSystem sys = testing::random_system(2, 3, 1, rng);
  const BatchModel bm = build_batch_model(sys, 2);
  const AugmentedModel aug = build_augmented_model(sys, 2);
  EtplConfig cfg;
  cfg.sigma = 1.01 / bm.lambda_max_qtq();
  EXPECT_THROW(ProjectedObserver(bm, aug, 1, cfg), UsageError);
  cfg.sigma = 0.9 / bm.lambda_max_qtq();
  EXPECT_NO_THROW(ProjectedObserver(bm, aug, 1, cfg));
  EXPECT_THROW(ProjectedObserver(bm, aug, 4), UsageError);
  EXPECT_THROW(ProjectedObserver(bm, build_augmented_model(sys, 3), 1), UsageError);
  cfg = EtplConfig{};
  cfg.attackable = SupportSet{5};
  EXPECT_THROW(ProjectedObserver(bm, aug, 1, cfg), UsageError);
  const ProjectedObserver obs(bm, aug, 1);
  EXPECT_THROW(obs.init(Vector::Zero(5)), UsageError);
  EXPECT_THROW(obs.time_update(Vector::Zero(bm.z_size()), Vector::Zero(1), Vector::Zero(3)),
               UsageError);
}

TEST(Etpl, PseudoinverseGainRecoversCleanWindow) {
  Rng rng(69);
  const LtiSystem sys = testing::random_system(2, 3, 0, rng, 0.9);
  const BatchModel bm = build_batch_model(sys, 2);
  EtplConfig cfg;
  cfg.gain_mode = GainMode::pseudoinverse;
  const ProjectedObserver obs(bm, build_augmented_model(sys, 2), 3, cfg);
  const Vector yw = testing::random_vector(bm.window_size(), rng);
  // With s = p the projection is the identity and one pseudoinverse step
  // fits the window exactly.
  const Vector z = obs.measurement_update(Vector::Zero(bm.z_size()), yw);
  EXPECT_LT(obs.lyapunov(z, yw), 1e-20);
}

}  // namespace
}  // namespace secobs
