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

#include "secobs/observability.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <unordered_set>

#include "enumerate.hpp"

namespace secobs {

namespace {

void check_guard(std::uint64_t count, std::uint64_t guard, const char* who) {
  if (count > guard) {
    throw CombinatorialGuardError(std::string(who) + ": " + std::to_string(count) +
                                  " supports exceed the enumeration guard of " +
                                  std::to_string(guard));
  }
}

// [C; CA; ...; CA^(n-1)], all sensors.
Matrix full_observability(const LtiSystem& sys) {
  const int n = sys.n();
  const int p = sys.p();
  Matrix obs(p * n, n);
  Matrix cak = sys.C();
  for (int j = 0; j < n; ++j) {
    obs.block(j * p, 0, p, n) = cak;
    cak = cak * sys.A();
  }
  return obs;
}

Matrix select_rows(const Matrix& m, const std::vector<int>& rows) {
  Matrix out(static_cast<Eigen::Index>(rows.size()), m.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out.row(static_cast<Eigen::Index>(r)) = m.row(rows[r]);
  }
  return out;
}

bool observable_without(const Matrix& obs, int n, int p, const std::vector<int>& removed) {
  const auto rows = kept_rows(SupportSet(removed), p, n);
  if (static_cast<int>(rows.size()) < n) {
    return false;
  }
  return rank(select_rows(obs, rows)) == n;
}

struct MinAt {
  double value = std::numeric_limits<double>::infinity();
  std::uint64_t rank = std::numeric_limits<std::uint64_t>::max();
};

}  // namespace

std::vector<int> kept_rows(const SupportSet& removed, int p, int blocks) {
  std::vector<int> rows;
  const auto keep = removed.complement(p);
  rows.reserve(keep.size() * static_cast<std::size_t>(blocks));
  for (int j = 0; j < blocks; ++j) {
    for (int i : keep.indices()) {
      rows.push_back(j * p + i);
    }
  }
  return rows;
}

Matrix observability_matrix(const LtiSystem& sys, const SupportSet& sensors) {
  sensors.check_bound(sys.p());
  const int n = sys.n();
  Matrix c(static_cast<Eigen::Index>(sensors.size()), n);
  for (std::size_t r = 0; r < sensors.size(); ++r) {
    c.row(static_cast<Eigen::Index>(r)) = sys.C().row(sensors.indices()[r]);
  }
  Matrix obs(c.rows() * n, n);
  Matrix cak = c;
  for (int j = 0; j < n; ++j) {
    obs.block(j * c.rows(), 0, c.rows(), n) = cak;
    cak = cak * sys.A();
  }
  return obs;
}

bool is_sparse_observable(const LtiSystem& sys, int s, Exec exec, std::uint64_t guard) {
  const int p = sys.p();
  const int n = sys.n();
  if (s < 0 || s > p) {
    throw UsageError("is_sparse_observable: s = " + std::to_string(s) +
                     " outside [0, p = " + std::to_string(p) + "]");
  }
  if (s == p) {
    return false;
  }
  check_guard(binomial(p, s), guard, "is_sparse_observable");
  const Matrix obs = full_observability(sys);
  return detail::reduce_combinations(
      p, s, exec == Exec::parallel, true,
      [&](std::uint64_t, const std::vector<int>& gamma) {
        return observable_without(obs, n, p, gamma);
      },
      [](bool a, bool b) { return a && b; });
}

bool is_sparse_observable(const LtiSystem& sys, int s, const SupportSet& attackable, Exec exec,
                          std::uint64_t guard) {
  if (attackable.empty()) {
    return is_sparse_observable(sys, s, exec, guard);
  }
  const int p = sys.p();
  const int n = sys.n();
  attackable.check_bound(p);
  const int k = static_cast<int>(attackable.size());
  if (s < 0 || s > p) {
    throw UsageError("is_sparse_observable: s outside [0, p]");
  }
  const int r = std::min(s, k);
  if (r == p) {
    return false;
  }
  check_guard(binomial(k, r), guard, "is_sparse_observable");
  const Matrix obs = full_observability(sys);
  return detail::reduce_combinations(
      k, r, exec == Exec::parallel, true,
      [&](std::uint64_t, const std::vector<int>& local) {
        std::vector<int> gamma;
        for (int i : local) gamma.push_back(attackable.indices()[static_cast<std::size_t>(i)]);
        return observable_without(obs, n, p, gamma);
      },
      [](bool a, bool b) { return a && b; });
}

RestrictedEigReport restricted_eigenvalue(const BatchModel& model, int s, Exec exec,
                                          std::uint64_t guard) {
  const int p = model.p();
  const int n = model.n();
  const int tau = model.tau();
  if (s < 0 || s > p) {
    throw UsageError("restricted_eigenvalue: s = " + std::to_string(s) +
                     " outside [0, p = " + std::to_string(p) + "]");
  }
  const std::uint64_t count = binomial(p, s);
  check_guard(count, guard, "restricted_eigenvalue");
  const Matrix& o = model.O();
  const Matrix oto = o.transpose() * o;
  const int dim = n + s * tau;

  // Gram of [O | I_S]: [[O^T O, O_S^T], [O_S, I]].
  auto eval = [&](std::uint64_t r, const std::vector<int>& kept) {
    Matrix g = Matrix::Identity(dim, dim);
    g.topLeftCorner(n, n) = oto;
    int col = n;
    for (int j = 0; j < tau; ++j) {
      for (int i : kept) {
        const auto row = o.row(j * p + i);
        g.block(col, 0, 1, n) = row;
        g.block(0, col, n, 1) = row.transpose();
        ++col;
      }
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(g, Eigen::EigenvaluesOnly);
    return MinAt{es.eigenvalues()(0), r};
  };
  const MinAt best = detail::reduce_combinations(
      p, s, exec == Exec::parallel, MinAt{}, eval, [](const MinAt& a, const MinAt& b) {
        if (b.value < a.value || (b.value == a.value && b.rank < a.rank)) {
          return b;
        }
        return a;
      });

  RestrictedEigReport rep;
  rep.delta = std::max(0.0, best.value);
  rep.argmin_support = SupportSet(unrank_combination(best.rank, p, s));
  rep.combinations_checked = count;
  return rep;
}

int max_resilience(const LtiSystem& sys, Exec exec) {
  if (!is_sparse_observable(sys, 0, exec)) {
    throw UnsolvableError("max_resilience: (A, C) is not observable");
  }
  int best = 0;
  for (int s = 1; 2 * s <= sys.p(); ++s) {
    if (!is_sparse_observable(sys, 2 * s, exec)) {
      break;
    }
    best = s;
  }
  return best;
}

bool injectivity_bruteforce(const BatchModel& model, int s, std::uint64_t guard) {
  const int p = model.p();
  const int n = model.n();
  if (s < 0) {
    throw UsageError("injectivity_bruteforce: negative s");
  }
  const int removed = 2 * s;
  if (removed >= p) {
    return false;
  }
  check_guard(binomial(p, removed), guard, "injectivity_bruteforce");
  const Matrix& o = model.O();
  bool injective = true;
  for_each_combination(p, removed, [&](const std::vector<int>& gamma) {
    if (!injective) {
      return;
    }
    const auto rows = kept_rows(SupportSet(gamma), p, model.tau());
    Matrix ob(static_cast<Eigen::Index>(rows.size()), n);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      ob.row(static_cast<Eigen::Index>(r)) = o.row(rows[r]);
    }
    Eigen::FullPivLU<Matrix> lu(ob);
    lu.setThreshold(kRankRelTol);
    if (lu.dimensionOfKernel() != 0) {
      injective = false;
    }
  });
  return injective;
}

std::vector<SupportSet> singleton_groups(int p) {
  std::vector<SupportSet> g;
  g.reserve(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) {
    g.push_back(SupportSet{i});
  }
  return g;
}

ConfinedResilience confined_resilience(const LtiSystem& sys,
                                       const std::vector<SupportSet>& groups) {
  const int g = static_cast<int>(groups.size());
  if (g > 20) {
    throw CombinatorialGuardError("confined_resilience: more than 20 sensor groups");
  }
  for (const auto& grp : groups) {
    grp.check_bound(sys.p());
  }
  const Matrix obs = full_observability(sys);
  const int n = sys.n();
  const int p = sys.p();

  auto sensors_of = [&](std::uint32_t mask) {
    std::vector<int> rows;
    for (int k = 0; k < g; ++k) {
      if (mask & (1u << k)) {
        for (int i : groups[static_cast<std::size_t>(k)].indices()) {
          rows.push_back(i);
        }
      }
    }
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    return rows;
  };

  ConfinedResilience out;
  for (int s = 1; 2 * s <= g; ++s) {
    const int k = 2 * s;
    // Removal sets of k groups that keep the plant observable.
    std::unordered_set<std::uint32_t> good;
    for_each_combination(g, k, [&](const std::vector<int>& c) {
      std::uint32_t mask = 0;
      for (int v : c) {
        mask |= 1u << v;
      }
      if (observable_without(obs, n, p, sensors_of(mask))) {
        good.insert(mask);
      }
    });
    if (good.empty()) {
      break;
    }
    // Largest T whose k-subsets are all good; lexicographic among equals.
    std::vector<int> best;
    for (int size = g; size >= k && best.empty(); --size) {
      for_each_combination(g, size, [&](const std::vector<int>& t) {
        if (!best.empty()) {
          return;
        }
        bool ok = true;
        for_each_combination(size, k, [&](const std::vector<int>& sub) {
          if (!ok) {
            return;
          }
          std::uint32_t mask = 0;
          for (int v : sub) {
            mask |= 1u << t[static_cast<std::size_t>(v)];
          }
          ok = good.count(mask) > 0;
        });
        if (ok) {
          best = t;
        }
      });
    }
    if (best.empty()) {
      break;
    }
    out.s = s;
    out.tolerable_groups = best;
    std::uint32_t mask = 0;
    for (int v : best) {
      mask |= 1u << v;
    }
    out.tolerable_sensors = SupportSet(sensors_of(mask));
  }
  return out;
}

}  // namespace secobs
