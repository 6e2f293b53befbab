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

#include "secobs/projection.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

namespace secobs {

namespace {

void check_layout(Eigen::Index len, int p, int tau, const char* who) {
  if (p < 1 || tau < 1) {
    throw UsageError(std::string(who) + ": p and tau must be positive");
  }
  if (len != static_cast<Eigen::Index>(p) * tau) {
    throw UsageError(std::string(who) + ": attack window has length " +
                     std::to_string(len) + ", expected p * tau = " +
                     std::to_string(p * tau));
  }
}

void check_s(int s, int p, const char* who) {
  if (s < 0 || s > p) {
    throw UsageError(std::string(who) + ": s = " + std::to_string(s) +
                     " outside [0, p = " + std::to_string(p) + "]");
  }
}

// Sensors to zero out: everything outside the top-s set.
std::vector<char> keep_mask(const Vector& energy, int s) {
  const int p = static_cast<int>(energy.size());
  std::vector<char> keep(static_cast<std::size_t>(p), 0);
  if (s >= p) {
    std::fill(keep.begin(), keep.end(), 1);
    return keep;
  }
  if (s == 0) {
    return keep;
  }
  std::vector<int> order(static_cast<std::size_t>(p));
  std::iota(order.begin(), order.end(), 0);
  auto before = [&energy](int a, int b) {
    if (energy(a) != energy(b)) {
      return energy(a) > energy(b);
    }
    return a < b;
  };
  std::nth_element(order.begin(), order.begin() + (s - 1), order.end(), before);
  for (int k = 0; k < s; ++k) {
    keep[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = 1;
  }
  return keep;
}

// Top-s selection among the attackable sensors only.
std::vector<char> confined_mask(const Vector& energy, int s, const SupportSet& attackable) {
  const int k = static_cast<int>(attackable.size());
  Vector sub(k);
  for (int i = 0; i < k; ++i) {
    sub(i) = energy(attackable.indices()[static_cast<std::size_t>(i)]);
  }
  const auto sub_keep = keep_mask(sub, std::min(s, k));
  std::vector<char> keep(static_cast<std::size_t>(energy.size()), 0);
  for (int i = 0; i < k; ++i) {
    keep[static_cast<std::size_t>(attackable.indices()[static_cast<std::size_t>(i)])] =
        sub_keep[static_cast<std::size_t>(i)];
  }
  return keep;
}

void zero_rows(Eigen::Ref<Vector> e, const std::vector<char>& keep, int p, int tau) {
  for (int i = 0; i < p; ++i) {
    if (!keep[static_cast<std::size_t>(i)]) {
      for (int j = 0; j < tau; ++j) {
        e(j * p + i) = 0.0;
      }
    }
  }
}

}  // namespace

CyclicSparseVector::CyclicSparseVector(Vector data, int p, int tau)
    : data_(std::move(data)), p_(p), tau_(tau) {
  check_layout(data_.size(), p, tau, "CyclicSparseVector");
}

SupportSet CyclicSparseVector::support() const {
  const Vector en = row_energy(data_, p_, tau_);
  std::vector<int> idx;
  for (int i = 0; i < p_; ++i) {
    if (en(i) != 0.0) {
      idx.push_back(i);
    }
  }
  return SupportSet(std::move(idx));
}

Vector row_energy(const Vector& e, int p, int tau) {
  check_layout(e.size(), p, tau, "row_energy");
  Vector out = Vector::Zero(p);
  for (int j = 0; j < tau; ++j) {
    out += e.segment(j * p, p).cwiseAbs2();
  }
  return out;
}

SupportSet top_energy_sensors(const Vector& energy, int s) {
  const int p = static_cast<int>(energy.size());
  check_s(s, p, "top_energy_sensors");
  const auto keep = keep_mask(energy, s);
  std::vector<int> idx;
  for (int i = 0; i < p; ++i) {
    if (keep[static_cast<std::size_t>(i)]) {
      idx.push_back(i);
    }
  }
  return SupportSet(std::move(idx));
}

Vector project_attack(const Vector& e, int p, int tau, int s) {
  check_s(s, p, "project");
  Vector out = e;
  zero_rows(out, keep_mask(row_energy(e, p, tau), s), p, tau);
  return out;
}

Vector project_attack(const Vector& e, int p, int tau, int s, const SupportSet& attackable) {
  if (attackable.empty()) {
    return project_attack(e, p, tau, s);
  }
  check_s(s, p, "project");
  attackable.check_bound(p);
  Vector out = e;
  zero_rows(out, confined_mask(row_energy(e, p, tau), s, attackable), p, tau);
  return out;
}

Vector project(const Vector& z, int n, int p, int tau, int s, const SupportSet& attackable) {
  Vector out = z;
  project_in_place(out, n, p, tau, s, attackable);
  return out;
}

void project_in_place(Vector& z, int n, int p, int tau, int s, const SupportSet& attackable) {
  if (attackable.empty()) {
    project_in_place(z, n, p, tau, s);
    return;
  }
  if (n < 0 || z.size() != n + static_cast<Eigen::Index>(p) * tau) {
    throw UsageError("project: z has length " + std::to_string(z.size()) +
                     ", expected n + p * tau");
  }
  check_s(s, p, "project");
  attackable.check_bound(p);
  auto e = z.tail(static_cast<Eigen::Index>(p) * tau);
  zero_rows(e, confined_mask(row_energy(e, p, tau), s, attackable), p, tau);
}

Vector project(const Vector& z, int n, int p, int tau, int s) {
  Vector out = z;
  project_in_place(out, n, p, tau, s);
  return out;
}

void project_in_place(Vector& z, int n, int p, int tau, int s) {
  if (n < 0 || z.size() != n + static_cast<Eigen::Index>(p) * tau) {
    throw UsageError("project: z has length " + std::to_string(z.size()) +
                     ", expected n + p * tau");
  }
  check_s(s, p, "project");
  if (s == p) {
    return;
  }
  auto e = z.tail(static_cast<Eigen::Index>(p) * tau);
  const Vector energy = row_energy(e, p, tau);
  zero_rows(e, keep_mask(energy, s), p, tau);
}

}  // namespace secobs
