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

#include "secobs/etpg.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <string>

#include "secobs/projection.hpp"

namespace secobs {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged:
      return "converged";
    case SolveStatus::outer_cap:
      return "outer_cap";
    case SolveStatus::inner_cap:
      return "inner_cap";
    case SolveStatus::stalled:
      return "stalled";
  }
  return "unknown";
}

Vector Estimate::z() const {
  Vector out(x_hat.size() + E_hat.size());
  out << x_hat, E_hat;
  return out;
}

std::vector<double> Estimate::projection_values() const {
  std::vector<double> out;
  for (const auto& pt : v_trace) {
    if (pt.projected) {
      out.push_back(pt.value);
    }
  }
  return out;
}

double lyapunov_v(const Matrix& q, const Vector& y, const Vector& z) {
  if (q.cols() != z.size() || q.rows() != y.size()) {
    throw UsageError("lyapunov_v: dimension mismatch");
  }
  return 0.5 * (y - q * z).squaredNorm();
}

double lyapunov_v(const BatchModel& model, const Vector& y, const Vector& z) {
  if (y.size() != model.window_size()) {
    throw UsageError("lyapunov_v: Y has wrong length");
  }
  return 0.5 * (y - model.apply_q(z)).squaredNorm();
}

Vector lyapunov_gradient(const BatchModel& model, const Vector& y, const Vector& z) {
  if (y.size() != model.window_size()) {
    throw UsageError("lyapunov_gradient: Y has wrong length");
  }
  return -model.apply_qt(y - model.apply_q(z));
}

double default_step_size(const Matrix& q) {
  if (q.size() == 0) {
    throw UsageError("default_step_size: empty Q");
  }
  return 1.0 / sym_eig_extrema(q.transpose() * q).lambda_max;
}

double default_step_size(const BatchModel& model) {
  return 1.0 / model.lambda_max_qtq();
}

namespace {

// Gradient iterate kept together with its residual pieces so one inner
// step costs one O x and one O^T r product.
struct Iterate {
  Vector x;
  Vector e;
  Vector ox;  // O x
};

double v_of(const Vector& y, const Vector& ox, const Vector& e) {
  return 0.5 * (y - ox - e).squaredNorm();
}

}  // namespace

Estimate etpg_solve(const BatchModel& model, const Vector& y, int s, const EtpgConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const int n = model.n();
  const int p = model.p();
  const int tau = model.tau();
  const int w = model.window_size();
  if (y.size() != w) {
    throw UsageError("etpg_solve: Y has length " + std::to_string(y.size()) +
                     ", expected " + std::to_string(w));
  }
  if (s < 0 || s > p) {
    throw UsageError("etpg_solve: s outside [0, p]");
  }
  cfg.attackable.check_bound(p);
  if (!(cfg.eps_terminate >= 0.0) || cfg.max_inner < 1 || cfg.max_outer < 0) {
    throw UsageError("etpg_solve: invalid configuration");
  }
  require_finite(y, "etpg_solve Y");
  const double eta = cfg.eta > 0.0 ? cfg.eta : default_step_size(model);
  const int max_outer = cfg.max_outer > 0 ? cfg.max_outer : 10 * model.z_size();
  const Matrix& o = model.O();

  std::unique_ptr<LeastSquaresSolver> pinv;
  if (cfg.mode == EtpgMode::one_step_pseudoinverse) {
    pinv = std::make_unique<LeastSquaresSolver>(model.Q());
  }

  Estimate est;
  // Projection point z_Pi^(k-1); starts at zero.
  Iterate zpi{Vector::Zero(n), Vector::Zero(w), Vector::Zero(w)};
  double v_pi = v_of(y, zpi.ox, zpi.e);
  est.v_trace.push_back({0, 0, v_pi, true});

  SolveStatus status = SolveStatus::converged;
  int k = 0;
  while (v_pi > cfg.eps_terminate) {
    if (k >= max_outer) {
      status = SolveStatus::outer_cap;
      break;
    }
    Iterate cur = zpi;
    Vector e_proj;
    double v_temp = v_pi;
    int m = 0;
    bool fired = false;

    if (pinv) {
      Vector z(n + w);
      z << cur.x, cur.e;
      z += pinv->solve(y - cur.ox - cur.e);
      cur.x = z.head(n);
      cur.e = z.tail(w);
      cur.ox = o * cur.x;
      m = 1;
      if (cfg.trace_inner) {
        est.v_trace.push_back({k, m, v_of(y, cur.ox, cur.e), false});
      }
      e_proj = project_attack(cur.e, p, tau, s, cfg.attackable);
      v_temp = v_of(y, cur.ox, e_proj);
      fired = v_temp < v_pi;
      if (!fired) {
        status = SolveStatus::stalled;
      }
    } else {
      Vector r = y - cur.ox - cur.e;
      while (v_temp >= v_pi) {
        if (m >= cfg.max_inner) {
          status = SolveStatus::inner_cap;
          break;
        }
        cur.x.noalias() += eta * (o.transpose() * r);
        cur.e += eta * r;
        cur.ox.noalias() = o * cur.x;
        ++m;
        r = y - cur.ox - cur.e;
        if (cfg.trace_inner) {
          est.v_trace.push_back({k, m, 0.5 * r.squaredNorm(), false});
        }
        e_proj = project_attack(cur.e, p, tau, s, cfg.attackable);
        v_temp = v_of(y, cur.ox, e_proj);
      }
      fired = v_temp < v_pi;
    }

    est.inner_counts.push_back(m);
    est.inner_iters_total += m;
    if (!fired) {
      break;
    }
    zpi.x = std::move(cur.x);
    zpi.ox = std::move(cur.ox);
    zpi.e = std::move(e_proj);
    v_pi = v_temp;
    ++k;
    est.v_trace.push_back({k, 0, v_pi, true});
  }

  est.outer_iters = k;
  est.x_hat = std::move(zpi.x);
  est.E_hat = std::move(zpi.e);
  est.final_v = v_pi;
  est.converged = v_pi <= cfg.eps_terminate;
  est.status = est.converged ? SolveStatus::converged : status;
  est.wall_time = std::chrono::duration_cast<std::chrono::nanoseconds>(
      std::chrono::steady_clock::now() - t0);
  return est;
}

std::optional<long long> inner_loop_bound(double delta_2s, double lambda_max, double eta) {
  if (!(lambda_max > 0.0) || !(delta_2s > 0.0) || !(eta > 0.0)) {
    return std::nullopt;
  }
  const double ratio = delta_2s / lambda_max;
  const double contraction = eta * delta_2s;
  if (!(ratio > 4.0 / 9.0) || contraction > 1.0) {
    return std::nullopt;
  }
  const double num = std::log(1.5 * std::sqrt(ratio) - 1.0);
  if (contraction == 1.0) {
    return 1;
  }
  const double den = std::log1p(-contraction);
  const double q = std::ceil(num / den);
  if (!std::isfinite(q) || q > static_cast<double>(std::numeric_limits<long long>::max())) {
    return std::nullopt;
  }
  return std::max(1LL, static_cast<long long>(q));
}

}  // namespace secobs
