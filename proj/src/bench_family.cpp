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

#include "secobs/bench_family.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <complex>
#include <map>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace secobs {

namespace {

using Clock = std::chrono::steady_clock;

long long ns_since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - t0).count();
}

Matrix standard_normal(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      m(i, j) = dist(rng);
    }
  }
  return m;
}

double rel_error(const Vector& est, const Vector& truth) {
  return (est - truth).norm() / std::max(1.0, truth.norm());
}

struct Instance {
  LtiSystem sys;
  std::vector<Vector> states;
  std::vector<Vector> outputs;
};

Instance make_instance(const BenchConfig& cfg, int s, int system, int steps) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(system)};
  Rng rng(seq);
  Instance inst{random_bench_system(cfg.n, cfg.p, rng), {}, {}};

  std::vector<int> sensors(static_cast<std::size_t>(cfg.p));
  std::iota(sensors.begin(), sensors.end(), 0);
  std::shuffle(sensors.begin(), sensors.end(), rng);
  sensors.resize(static_cast<std::size_t>(s));

  std::normal_distribution<double> dist(0.0, 1.0);
  Vector x(cfg.n);
  for (int i = 0; i < cfg.n; ++i) {
    x(i) = dist(rng);
  }
  for (int t = 0; t < steps; ++t) {
    Vector y = inst.sys.C() * x;
    for (int i : sensors) {
      y(i) += cfg.attack_scale * dist(rng);
    }
    inst.states.push_back(x);
    inst.outputs.push_back(std::move(y));
    x = inst.sys.A() * x;
  }
  return inst;
}

}  // namespace

LtiSystem random_bench_system(int n, int p, Rng& rng) {
  if (n < 1 || p < 1) {
    throw UsageError("random_bench_system: n and p must be positive");
  }
  Matrix a = standard_normal(n, n, rng);
  const double radius = a.eigenvalues().cwiseAbs().maxCoeff();
  if (radius > 0.0) {
    a /= radius;
  }
  Matrix c = standard_normal(p, n, rng);
  return LtiSystem(a, Matrix(n, 0), c);
}

std::vector<BenchRun> bench_runs(const BenchConfig& cfg) {
  if (cfg.n < 1 || cfg.p < 1 || cfg.systems < 0 || cfg.s_min < 0 || cfg.s_max < cfg.s_min ||
      cfg.s_max > cfg.p || cfg.horizon < 0) {
    throw UsageError("bench: invalid configuration");
  }
  const int tau = cfg.tau > 0 ? cfg.tau : cfg.n;
  const int steps = tau + cfg.horizon;
  const int n_s = cfg.s_max - cfg.s_min + 1;
  const int tasks = n_s * cfg.systems;
  std::vector<std::array<BenchRun, 2>> out(static_cast<std::size_t>(tasks));
  const int jobs = cfg.jobs > 0 ? cfg.jobs : omp_get_max_threads();

  auto run_one = [&](int task) {
    const int s = cfg.s_min + task / std::max(1, cfg.systems);
    const int system = task % std::max(1, cfg.systems);
    const Instance inst = make_instance(cfg, s, system, steps);
    const BatchModel model = build_batch_model(inst.sys, tau);
    const std::vector<Vector> no_inputs(static_cast<std::size_t>(steps), Vector(0));

    // Batch solve on the first window.
    BenchRun g{.s = s, .system = system, .algo = "etpg"};
    {
      const EtpgConfig& ec = cfg.etpg;
      const MeasurementWindow win = make_window(inst.outputs, no_inputs, model, tau - 1);
      const auto t0 = Clock::now();
      const Estimate est = etpg_solve(model, win.Y, s, ec);
      g.exec_ns = ns_since(t0);
      g.conv_ns = g.exec_ns;
      g.conv_compute_ns = g.exec_ns;
      g.steps = 1;
      g.rel_error = rel_error(est.x_hat, inst.states[0]);
      g.success = g.rel_error < cfg.success_rel_tol;
      g.outer = est.outer_iters;
      g.inner = static_cast<double>(est.inner_iters_total);
    }

    // Observer run until the estimate is eps-close or the horizon ends.
    BenchRun l{.s = s, .system = system, .algo = "etpl"};
    {
      ProjectedObserver obs(model, build_augmented_model(inst.sys, tau), s, cfg.etpl);
      const Vector u_prev(0);
      long long total_ns = 0;
      long long max_step_ns = 0;
      long long last_step_ns = 0;
      long long conv_ns = -1;
      int steps_run = 0;
      long long inner = 0;
      long long rounds = 0;
      ObserverState st;
      for (int t = tau - 1; t < steps; ++t) {
        const MeasurementWindow win = make_window(inst.outputs, no_inputs, model, t);
        const auto t0 = Clock::now();
        if (t == tau - 1) {
          st = obs.init(win.Y);
        } else {
          st = obs.step(st, u_prev, inst.outputs[static_cast<std::size_t>(t)], win.Y);
        }
        last_step_ns = ns_since(t0);
        total_ns += last_step_ns;
        max_step_ns = std::max(max_step_ns, last_step_ns);
        ++steps_run;
        inner += st.inner_iters;
        rounds += st.meas_rounds;
        const double err =
            rel_error(st.z_hat.head(cfg.n), inst.states[static_cast<std::size_t>(t - tau + 1)]);
        l.rel_error = err;
        if (err <= cfg.eps_close) {
          conv_ns = total_ns;
          break;
        }
      }
      const long long period = std::max(g.exec_ns, max_step_ns);
      g.period_ns = l.period_ns = period;
      l.steps = steps_run;
      l.exec_ns = total_ns / std::max(1, steps_run);
      l.conv_compute_ns = conv_ns >= 0 ? conv_ns : total_ns;
      l.conv_ns = static_cast<long long>(steps_run - 1) * period + last_step_ns;
      l.success = conv_ns >= 0;
      l.outer = static_cast<double>(rounds) / std::max(1, steps_run);
      l.inner = static_cast<double>(inner) / std::max(1, steps_run);
    }
    out[static_cast<std::size_t>(task)] = {g, l};
  };

  if (cfg.exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
    for (int task = 0; task < tasks; ++task) {
      run_one(task);
    }
  } else {
    for (int task = 0; task < tasks; ++task) {
      run_one(task);
    }
  }

  std::vector<BenchRun> runs;
  runs.reserve(static_cast<std::size_t>(2 * tasks));
  for (const auto& pair : out) {
    runs.push_back(pair[0]);
    runs.push_back(pair[1]);
  }
  std::stable_sort(runs.begin(), runs.end(), [](const BenchRun& a, const BenchRun& b) {
    return std::tie(a.s, a.system, a.algo) < std::tie(b.s, b.system, b.algo);
  });
  return runs;
}

std::vector<BenchRow> summarize(const std::vector<BenchRun>& runs) {
  std::map<std::pair<int, std::string>, BenchRow> acc;
  for (const auto& r : runs) {
    BenchRow& row = acc[{r.s, r.algo}];
    row.s = r.s;
    row.algo = r.algo;
    row.mean_exec_ns += static_cast<double>(r.exec_ns);
    row.mean_conv_ns += static_cast<double>(r.conv_ns);
    row.mean_conv_compute_ns += static_cast<double>(r.conv_compute_ns);
    row.success_rate += r.success ? 1.0 : 0.0;
    row.mean_outer += r.outer;
    row.mean_inner += r.inner;
    ++row.runs;
  }
  std::vector<BenchRow> rows;
  for (auto& [key, row] : acc) {
    const double k = static_cast<double>(row.runs);
    row.mean_exec_ns /= k;
    row.mean_conv_ns /= k;
    row.mean_conv_compute_ns /= k;
    row.success_rate /= k;
    row.mean_outer /= k;
    row.mean_inner /= k;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace secobs
