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

// Serial reference versus OpenMP kernels.

#include <benchmark/benchmark.h>

#include <random>

#include "secobs/bench_family.hpp"
#include "secobs/observability.hpp"
#include "secobs/oracle.hpp"

namespace {

using namespace secobs;

LtiSystem make_system(int n, int p) {
  Rng rng(2024);
  return random_bench_system(n, p, rng);
}

Exec exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Exec::serial : Exec::parallel;
}

void BM_RestrictedEigenvalue(benchmark::State& state) {
  const BatchModel bm = build_batch_model(make_system(6, 14), 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(restricted_eigenvalue(bm, 4, exec_of(state)).delta);
  }
}
BENCHMARK(BM_RestrictedEigenvalue)->ArgName("parallel")->Arg(0)->Arg(1);

void BM_SparseObservability(benchmark::State& state) {
  const LtiSystem sys = make_system(8, 16);
  for (auto _ : state) {
    benchmark::DoNotOptimize(is_sparse_observable(sys, 6, exec_of(state)));
  }
}
BENCHMARK(BM_SparseObservability)->ArgName("parallel")->Arg(0)->Arg(1);

void BM_BruteForceDecode(benchmark::State& state) {
  const LtiSystem sys = make_system(4, 14);
  const BatchModel bm = build_batch_model(sys, 4);
  Rng rng(7);
  std::normal_distribution<double> nd;
  Vector z = Vector::Zero(bm.z_size());
  for (int i = 0; i < 4; ++i) z(i) = nd(rng);
  // Three attacked sensors, so sizes 0..2 are tried and rejected first.
  for (int j = 0; j < 4; ++j) {
    for (int i : {2, 7, 11}) z(4 + j * 14 + i) = 5.0 * nd(rng);
  }
  const Vector y = bm.apply_q(z);
  for (auto _ : state) {
    benchmark::DoNotOptimize(brute_force_decode(bm, y, 3, {}, exec_of(state)).x);
  }
}
BENCHMARK(BM_BruteForceDecode)->ArgName("parallel")->Arg(0)->Arg(1);

void BM_BenchFamily(benchmark::State& state) {
  BenchConfig cfg;
  cfg.n = 6;
  cfg.p = 8;
  cfg.systems = 4;
  cfg.s_max = 2;
  cfg.horizon = 300;
  cfg.exec = exec_of(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bench_runs(cfg).size());
  }
}
BENCHMARK(BM_BenchFamily)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
