// Copyright 2026 The qsvmperf Authors
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

#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qsvm {

/// Frobenius-nearest positive semi-definite matrix: symmetrize, clamp negative
/// eigenvalues to zero, reassemble. Throws std::invalid_argument when the input
/// is not square or is asymmetric beyond 1e-10 (relative to its scale), and
/// std::runtime_error if the eigensolver fails.
Eigen::MatrixXd psd_project(const Eigen::MatrixXd& s);

/// Restricted structural-SVM dual over a working set of k constraints:
///   max  -1/2 a^T J a + b^T a   s.t.  a >= 0,  sum(a) <= C.
struct RestrictedDual {
  Eigen::MatrixXd jhat;  // symmetric PSD, k x k
  Eigen::VectorXd b;     // ||c||_1 / m per constraint
  double budget = 1.0;   // C

  void validate() const;
};

struct DualSolution {
  Eigen::VectorXd alpha;
  double objective = 0.0;
  double kkt_residual = 0.0;
  int iterations = 0;
};

/// D(alpha) evaluated directly.
double dual_objective(const Eigen::VectorXd& alpha, const RestrictedDual& rd);

/// Largest KKT violation of alpha, in gradient units. With g = b - J a and the
/// budget slack treated as an extra coordinate with zero gradient, this is
/// max_i g_i - min_{j : a_j > 0} g_j; it vanishes exactly at the optimum.
double kkt_residual(const Eigen::VectorXd& alpha, const RestrictedDual& rd);

/// Exact maximization of D(a + beta * eta) - D(a) over 0 <= beta <= beta_max,
/// given the gradient g = grad D(a).
struct LineStep {
  double beta = 0.0;
  double gain = 0.0;
};
LineStep exact_line_search(const Eigen::MatrixXd& j, const Eigen::VectorXd& gradient,
                           const Eigen::VectorXd& direction, double beta_max);

/// Raised when the solver hits its iteration cap above tolerance. Carries the
/// best feasible iterate found.
class QpNonConvergence : public std::runtime_error {
 public:
  QpNonConvergence(const std::string& what, DualSolution best)
      : std::runtime_error(what), best_(std::move(best)) {}
  const DualSolution& best() const noexcept { return best_; }

 private:
  DualSolution best_;
};

struct QpOptions {
  double tolerance = 1e-8;  // on kkt_residual
  int max_iterations_per_var = 10000;
};

/// Pairwise (SMO-style) ascent with exact line search between the most
/// violating coordinates, followed by an equality-constrained Newton polish
/// on the detected active face. A warm start of the wrong length is ignored;
/// a warm start that violates feasibility is rescaled into the feasible set.
DualSolution solve_restricted_dual(const RestrictedDual& rd,
                                   const Eigen::VectorXd* warm_start = nullptr,
                                   const QpOptions& options = {});

}  // namespace qsvm
