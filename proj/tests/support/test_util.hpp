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

// Seeded generators shared by the unit and acceptance tests.

#pragma once

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "secobs/projection.hpp"
#include "secobs/simulation.hpp"
#include "secobs/system_model.hpp"

namespace secobs::testing {

using Rng = std::mt19937_64;

inline double normal(Rng& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); }

inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline Matrix random_matrix(int rows, int cols, Rng& rng) {
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      m(i, j) = normal(rng);
    }
  }
  return m;
}

inline Vector random_vector(int n, Rng& rng) { return random_matrix(n, 1, rng); }

/// Gaussian A, B, C with A scaled to spectral radius `radius`.
inline LtiSystem random_system(int n, int p, int m, Rng& rng, double radius = 1.0) {
  Matrix a = random_matrix(n, n, rng);
  const double r = a.eigenvalues().cwiseAbs().maxCoeff();
  if (r > 0.0) {
    a *= radius / r;
  }
  return LtiSystem(a, random_matrix(n, m, rng), random_matrix(p, n, rng));
}

/// Uniformly random k-subset of {0..p-1}.
inline SupportSet random_support(int p, int k, Rng& rng) {
  std::vector<int> all(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) all[static_cast<std::size_t>(i)] = i;
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(static_cast<std::size_t>(k));
  std::sort(all.begin(), all.end());
  return SupportSet(all);
}

/// Attack window with the given row support and Gaussian entries of the
/// given scale.
inline Vector random_attack_window(const SupportSet& support, int p, int tau, double scale,
                                   Rng& rng) {
  Vector e = Vector::Zero(p * tau);
  for (int j = 0; j < tau; ++j) {
    for (int i : support.indices()) {
      e(j * p + i) = scale * normal(rng);
    }
  }
  return e;
}

/// Planar rotation by `angle` observed by p sensors whose rows are evenly
/// spread unit directions scaled by sqrt(2/p), so C^T C = I. With tau = 1
/// every small sensor subset has nearly orthogonal columns, which puts the
/// restricted eigenvalue close to lambda_max / 2.
inline LtiSystem spread_rotation_system(int p, double angle) {
  Matrix a(2, 2);
  a << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  Matrix c(p, 2);
  const double scale = std::sqrt(2.0 / p);
  for (int i = 0; i < p; ++i) {
    const double phi = std::numbers::pi * i / p;
    c(i, 0) = scale * std::cos(phi);
    c(i, 1) = scale * std::sin(phi);
  }
  return LtiSystem(a, Matrix(2, 0), c);
}

/// Noiseless measurement window and ground truth z* = (x, E) for a
/// random open-loop trajectory of tau steps.
struct WindowInstance {
  Vector y;
  Vector z_true;
};

inline WindowInstance make_window_instance(const BatchModel& model, const Vector& x0,
                                           const Vector& e) {
  WindowInstance w;
  w.z_true.resize(model.z_size());
  w.z_true << x0, e;
  w.y = model.apply_q(w.z_true);
  return w;
}

}  // namespace secobs::testing
