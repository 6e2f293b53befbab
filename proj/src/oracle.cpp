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

#include "secobs/oracle.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <vector>

#include "enumerate.hpp"

namespace secobs {

const char* to_string(DecodeStatus s) {
  switch (s) {
    case DecodeStatus::unique:
      return "unique";
    case DecodeStatus::ambiguous:
      return "ambiguous";
    case DecodeStatus::infeasible:
      return "infeasible";
  }
  return "unknown";
}

namespace {

struct Fit {
  std::uint64_t rank = 0;
  Vector x;
  bool full_rank = true;
};

// Fits accepted within one chunk of the enumeration, in rank order.
using Fits = std::vector<Fit>;

}  // namespace

DecodeResult brute_force_decode(const BatchModel& model, const Vector& y, int s,
                                const OracleConfig& cfg, Exec exec) {
  const int n = model.n();
  const int p = model.p();
  const int tau = model.tau();
  if (y.size() != model.window_size()) {
    throw UsageError("brute_force_decode: Y has wrong length");
  }
  if (s < 0 || s > p) {
    throw UsageError("brute_force_decode: s outside [0, p]");
  }
  cfg.attackable.check_bound(p);
  std::vector<int> pool = cfg.attackable.indices();
  if (pool.empty()) {
    for (int i = 0; i < p; ++i) pool.push_back(i);
  }
  const int k_pool = static_cast<int>(pool.size());
  const int r_max = std::min(s, k_pool);
  auto support_of = [&pool](const std::vector<int>& local) {
    std::vector<int> idx;
    for (int i : local) idx.push_back(pool[static_cast<std::size_t>(i)]);
    return SupportSet(std::move(idx));
  };
  auto support_at = [&](std::uint64_t rank, int r) {
    return support_of(unrank_combination(rank, k_pool, r));
  };

  std::uint64_t total = 0;
  for (int r = 0; r <= r_max; ++r) {
    total += binomial(k_pool, r);
  }
  if (total > cfg.guard) {
    throw CombinatorialGuardError("brute_force_decode: " + std::to_string(total) +
                                  " supports exceed the enumeration guard");
  }

  const Matrix& o = model.O();
  const double accept = cfg.residual_rel_tol * (1.0 + y.norm());

  for (int r = 0; r <= r_max; ++r) {
    auto try_support = [&](std::uint64_t rank, const std::vector<int>& local) {
      const auto rows = kept_rows(support_of(local), p, tau);
      Fits out;
      if (rows.empty()) {
        return out;
      }
      Matrix ob(static_cast<Eigen::Index>(rows.size()), n);
      Vector yb(static_cast<Eigen::Index>(rows.size()));
      for (std::size_t k = 0; k < rows.size(); ++k) {
        ob.row(static_cast<Eigen::Index>(k)) = o.row(rows[k]);
        yb(static_cast<Eigen::Index>(k)) = y(rows[k]);
      }
      LeastSquaresSolver ls(ob);
      Vector x = ls.solve(yb);
      if ((ob * x - yb).norm() <= accept) {
        out.push_back({rank, std::move(x), ls.rank() == n});
      }
      return out;
    };
    const Fits fits = detail::reduce_combinations(
        k_pool, r, exec == Exec::parallel, Fits{}, try_support, [](Fits a, const Fits& b) {
          a.insert(a.end(), b.begin(), b.end());
          return a;
        });
    if (fits.empty()) {
      continue;
    }

    DecodeResult res;
    res.consistent_supports = static_cast<int>(fits.size());
    const Fit& first = fits.front();
    res.support = support_at(first.rank, r);
    res.x = first.x;
    res.E = Vector::Zero(model.window_size());
    const Vector ox = o * res.x;
    for (int j = 0; j < tau; ++j) {
      for (int i : res.support.indices()) {
        res.E(j * p + i) = y(j * p + i) - ox(j * p + i);
      }
    }
    res.status = DecodeStatus::unique;
    for (const auto& f : fits) {
      if (!f.full_rank) {
        res.status = DecodeStatus::ambiguous;
        res.diagnostic = "ambiguous: support " +
                         support_at(f.rank, r).to_string() +
                         " leaves the state unobservable";
        break;
      }
      if ((f.x - first.x).norm() > cfg.ambiguity_tol) {
        res.status = DecodeStatus::ambiguous;
        res.diagnostic = "ambiguous: supports " + res.support.to_string() + " and " +
                         support_at(f.rank, r).to_string() +
                         " explain the data with different states";
        break;
      }
    }
    return res;
  }

  DecodeResult res;
  res.status = DecodeStatus::infeasible;
  res.diagnostic = "infeasible: no support of size <= " + std::to_string(s) +
                   " is consistent with the data";
  return res;
}

}  // namespace secobs
