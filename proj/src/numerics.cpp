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

#include "secobs/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace secobs {

namespace {

std::string dims(const Matrix& m) {
  std::ostringstream os;
  os << m.rows() << "x" << m.cols();
  return os.str();
}

}  // namespace

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) {
    throw UsageError(std::string(what) + ": non-finite entry");
  }
}

void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) {
    throw UsageError(std::string(what) + ": non-finite entry");
  }
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw UsageError("matmul: inner dimensions disagree (" + dims(a) + " * " +
                     dims(b) + ")");
  }
  return a * b;
}

Vector matvec(const Matrix& a, const Vector& x) {
  if (a.cols() != x.size()) {
    throw UsageError("matvec: dimension mismatch (" + dims(a) + " * " +
                     std::to_string(x.size()) + ")");
  }
  return a * x;
}

EigExtrema sym_eig_extrema(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw UsageError("sym_eig_extrema: matrix is " + dims(m) + ", not square");
  }
  if (m.size() == 0) {
    throw UsageError("sym_eig_extrema: empty matrix");
  }
  const Matrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return {ev.minCoeff(), ev.maxCoeff()};
}

int rank(const Matrix& m, double rel_tol) {
  if (!(rel_tol > 0.0)) {
    throw UsageError("rank: rel_tol must be positive");
  }
  if (m.size() == 0) {
    return 0;
  }
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  if (smax == 0.0) {
    return 0;
  }
  const double cut =
      rel_tol * smax * static_cast<double>(std::max(m.rows(), m.cols()));
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cut) {
      ++r;
    }
  }
  return r;
}

Vector lstsq(const Matrix& a, const Vector& b) {
  if (a.rows() != b.size()) {
    throw UsageError("lstsq: A is " + dims(a) + " but b has length " +
                     std::to_string(b.size()));
  }
  if (a.cols() == 0) {
    return Vector(0);
  }
  if (a.rows() == 0) {
    return Vector::Zero(a.cols());
  }
  return LeastSquaresSolver(a).solve(b);
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) {
    return 0.0;
  }
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

LeastSquaresSolver::LeastSquaresSolver(const Matrix& a)
    : rows_(a.rows()), cols_(a.cols()) {
  cod_.setThreshold(kRankRelTol);
  cod_.compute(a);
}

Vector LeastSquaresSolver::solve(const Vector& b) const {
  if (b.size() != rows_) {
    throw UsageError("LeastSquaresSolver: rhs length " +
                     std::to_string(b.size()) + " != " + std::to_string(rows_));
  }
  return cod_.solve(b);
}

}  // namespace secobs
