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

// secobs command-line front end.
//
//   secobs analyze SYSTEM.json [--tau N] [--s-max K]
//   secobs solve SCENARIO.json [--algo etpg|etpl|oracle] [--out trace.csv]
//   secobs observe SCENARIO.json [--out trace.csv]
//   secobs bench [--n 20] [--p 25] [--systems 100] [--s-max 12] [--seed 1]
//                [--out summary.csv] [--jobs J]
//
// Exit status: 0 success, 2 estimator did not converge (or the decode was
// ambiguous), 1 usage or input error. Diagnostics go to stderr and are
// controlled by SECOBS_LOG.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "secobs/bench_family.hpp"
#include "secobs/io.hpp"
#include "secobs/log.hpp"
#include "secobs/observability.hpp"
#include "secobs/simulation.hpp"

namespace {

using namespace secobs;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNotConverged = 2;

struct AnalyzeArgs {
  std::string system_file;
  int tau = 0;
  int s_max = -1;
  std::string out;
};

struct SolveArgs {
  std::string scenario_file;
  std::string algo;
  std::string out;
};

struct BenchArgs {
  BenchConfig cfg;
  std::string out;
  bool serial = false;
};

// Writes to --out when given, stdout otherwise.
void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
    std::cout.flush();
  } else {
    write_text_file(out, text);
  }
}

std::string fmt_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

int run_analyze(const AnalyzeArgs& a) {
  const SystemFile f = read_system_file(a.system_file);
  const LtiSystem& sys = f.sys;
  const int p = sys.p();
  const int tau = a.tau > 0 ? a.tau : sys.n();
  if (tau > sys.n()) {
    throw UsageError("--tau must not exceed n = " + std::to_string(sys.n()));
  }
  const int s_max = a.s_max >= 0 ? a.s_max : p / 2;
  if (2 * s_max > p) {
    throw UsageError("--s-max must satisfy 2 s <= p = " + std::to_string(p));
  }

  std::ostringstream os;
  os << "system: n = " << sys.n() << ", m = " << sys.m() << ", p = " << p << ", tau = " << tau
     << "\n";
  const bool observable = is_sparse_observable(sys, 0);
  os << "observable: " << (observable ? "yes" : "no") << "\n";
  if (observable) {
    os << "max_resilience: " << max_resilience(sys) << "\n";
  } else {
    os << "max_resilience: n/a (not observable)\n";
  }

  const auto groups = f.sensor_groups.empty() ? singleton_groups(p) : f.sensor_groups;
  if (groups.size() <= 20 && observable) {
    const ConfinedResilience cr = confined_resilience(sys, groups);
    os << "confined_resilience: s = " << cr.s << ", attackable sensors "
       << cr.tolerable_sensors.to_string() << "\n";
  }

  const BatchModel model = build_batch_model(sys, tau);
  const double lambda = model.lambda_max_qtq();
  os << "\n s  2s-sparse-observable  delta_2s  lambda_max  delta_2s>(4/9)lambda\n";
  for (int s = 0; s <= s_max; ++s) {
    try {
      const bool obs = is_sparse_observable(sys, 2 * s);
      const RestrictedEigReport r = restricted_eigenvalue(model, 2 * s);
      const double delta = std::max(0.0, r.delta);
      os << ' ' << s << "  " << (obs ? "yes" : "no") << "  " << fmt_num(delta) << "  "
         << fmt_num(lambda) << "  " << (delta > 4.0 / 9.0 * lambda ? "yes" : "no") << "\n";
    } catch (const CombinatorialGuardError& e) {
      os << "truncated at s = " << s << ": " << e.what() << "\n";
      break;
    }
  }
  emit(a.out, os.str());
  return kExitOk;
}

int run_solve(const SolveArgs& a) {
  Scenario sc = read_scenario_file(a.scenario_file);
  if (!a.algo.empty()) {
    sc.estimator.kind = estimator_kind_from_string(a.algo);
  }
  const ScenarioResult res = run_scenario(sc);
  std::ostringstream os;
  write_trace_csv(os, res.rows, sc.sys.n(), sc.sys.p());
  emit(a.out, os.str());

  if (!res.final_converged) {
    log::error("final window: {} ({})", res.final_status, to_string(sc.estimator.kind));
    return kExitNotConverged;
  }
  if (!res.all_converged) {
    log::warn("some intermediate windows did not converge");
  }
  return kExitOk;
}

int run_bench(BenchArgs a) {
  if (a.serial) {
    a.cfg.exec = Exec::serial;
  }
  const auto rows = bench_random_family(a.cfg);
  std::ostringstream os;
  write_bench_csv(os, rows);
  emit(a.out, os.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  log::configure_from_env();

  CLI::App app{"Secure state estimation under sparse sensor attacks"};
  app.require_subcommand(1);

  AnalyzeArgs analyze;
  auto* an = app.add_subcommand("analyze", "observability and resilience report");
  an->add_option("system", analyze.system_file, "system file (JSON)")->required();
  an->add_option("--tau", analyze.tau, "window length (default n)");
  an->add_option("--s-max", analyze.s_max, "largest s in the table (default p / 2)");
  an->add_option("--out", analyze.out, "report file (default stdout)");

  SolveArgs solve;
  auto* so = app.add_subcommand("solve", "run a scenario and write its trace");
  so->add_option("scenario", solve.scenario_file, "scenario file (JSON)")->required();
  so->add_option("--algo", solve.algo, "estimator override")
      ->check(CLI::IsMember({"etpg", "etpl", "oracle"}));
  so->add_option("--out", solve.out, "trace CSV (default stdout)");

  SolveArgs observe;
  auto* ob = app.add_subcommand("observe", "same as solve --algo etpl");
  ob->add_option("scenario", observe.scenario_file, "scenario file (JSON)")->required();
  ob->add_option("--out", observe.out, "trace CSV (default stdout)");

  BenchArgs bench;
  auto* be = app.add_subcommand("bench", "random-system timing benchmark");
  be->add_option("--n", bench.cfg.n, "states")->capture_default_str();
  be->add_option("--p", bench.cfg.p, "sensors")->capture_default_str();
  be->add_option("--systems", bench.cfg.systems, "systems per s")->capture_default_str();
  be->add_option("--s-min", bench.cfg.s_min, "smallest s")->capture_default_str();
  be->add_option("--s-max", bench.cfg.s_max, "largest s")->capture_default_str();
  be->add_option("--seed", bench.cfg.seed, "base seed")->capture_default_str();
  be->add_option("--horizon", bench.cfg.horizon, "observer steps per run")->capture_default_str();
  be->add_option("--jobs", bench.cfg.jobs, "worker threads (default: all)");
  be->add_flag("--serial", bench.serial, "run without OpenMP");
  be->add_option("--out", bench.out, "summary CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (an->parsed()) return run_analyze(analyze);
    if (so->parsed()) return run_solve(solve);
    if (ob->parsed()) {
      observe.algo = "etpl";
      return run_solve(observe);
    }
    if (be->parsed()) return run_bench(bench);
  } catch (const UsageError& e) {
    log::error("{}", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    log::error("{}", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
