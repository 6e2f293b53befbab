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

// Dense linear-algebra layer. Every other module works in terms of these
// aliases and checked operations; nothing here knows about attacks or
// observers.

#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <utility>

namespace secobs {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Thrown when a caller violates an operation's dimensional or range
/// preconditions. Numerical non-convergence is never reported this way.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exact equality that tolerates differing shapes (false) and empty operands.
template <typename L, typename R>
bool same_entries(const Eigen::MatrixBase<L>& l, const Eigen::MatrixBase<R>& r) {
  return l.rows() == r.rows() && l.cols() == r.cols() && (l.array() == r.array()).all();
}

/// Default relative tolerance for numerical rank decisions.
inline constexpr double kRankRelTol = 1e-9;

void require_finite(const Matrix& m, const char* what);
void require_finite(const Vector& v, const char* what);

/// Checked product; throws UsageError when inner dimensions disagree.
Matrix matmul(const Matrix& a, const Matrix& b);
Vector matvec(const Matrix& a, const Vector& x);

struct EigExtrema {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
};

/// Extreme eigenvalues of (M + M^T) / 2.
EigExtrema sym_eig_extrema(const Matrix& m);

/// Number of singular values above rel_tol * sigma_max * max(rows, cols).
int rank(const Matrix& m, double rel_tol = kRankRelTol);

/// Minimum-norm least-squares solution of min ||A x - b||.
Vector lstsq(const Matrix& a, const Vector& b);

/// Largest singular value (0 for empty matrices).
double spectral_norm(const Matrix& m);

/// Caches a complete orthogonal decomposition so repeated minimum-norm
/// solves against the same matrix cost one back-substitution each.
class LeastSquaresSolver {
 public:
  explicit LeastSquaresSolver(const Matrix& a);

  Vector solve(const Vector& b) const;
  int rank() const { return static_cast<int>(cod_.rank()); }
  Eigen::Index rows() const { return rows_; }
  Eigen::Index cols() const { return cols_; }

 private:
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod_;
  Eigen::Index rows_ = 0;
  Eigen::Index cols_ = 0;
};

}  // namespace secobs
