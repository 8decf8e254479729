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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qsvm/dataset.hpp"
#include "qsvm/feature_kernel.hpp"
#include "qsvm/oracle.hpp"
#include "qsvm/qp_solver.hpp"

namespace qsvm {

struct TrainConfig {
  double C = 1e4;
  double eps = 1e-2;
  double delta = 0.1;
  int t_max = 50;
  /// Initial constraint; all-ones when empty.
  std::optional<ConstraintVector> c_init;
  int threads = 1;
  QpOptions qp;

  void validate() const;
};

struct ToleranceSchedule {
  double eps_j = 0.0;
  double delta_j = 0.0;
  double delta_zeta = 0.0;
};

/// eps_J = 1/(C t t_max), delta_J = delta/(2 t^2 t_max), delta_zeta = delta/(2 m t_max).
ToleranceSchedule tolerance_schedule(int t, const TrainConfig& cfg, std::size_t m);

enum class Termination {
  tolerance,
  cap,
  /// The next constraint was already in the working set.
  stalled,
};

std::string to_string(Termination t);
Termination termination_from_string(const std::string& s);

struct Model {
  std::vector<ConstraintVector> constraints;
  Eigen::VectorXd alpha;
  double xi_hat = 0.0;
  /// Smallest nonzero ||Psi_c|| over `constraints`.
  double psi_min = 0.0;
  /// Restricted-dual solves performed.
  int iterations = 0;
  Termination terminated_by = Termination::tolerance;
  TrainConfig config;

  /// Training-set size the constraints index.
  std::size_t size() const noexcept {
    return constraints.empty() ? 0 : constraints.front().size();
  }
};

/// The loop state after one iteration.
struct WorkingSetState {
  std::vector<ConstraintVector> constraints;
  Eigen::MatrixXd jtilde;
  Eigen::MatrixXd jhat;
  DualSolution alpha;
  double xi_hat = 0.0;
  Eigen::VectorXd zetas;
  int t = 0;
};

struct IterationRecord {
  int t = 0;
  ToleranceSchedule schedule;
  double dual_objective = 0.0;
  double kkt_residual = 0.0;
  int qp_iterations = 0;
  double xi_hat = 0.0;
  double hinge = 0.0;
  /// ||J - Jtilde||_F and ||J - Jhat||_F against the exact block.
  double jtilde_error = 0.0;
  double jhat_error = 0.0;
  std::size_t next_ones = 0;
  /// The hinge test passed at this iteration.
  bool tolerance_met = false;
};

struct TrainResult {
  Model model;
  std::vector<IterationRecord> trace;
  /// Every constraint in generation order; W_t is the first t entries.
  std::vector<ConstraintVector> history;
  WorkingSetState final_state;
};

/// Exact Gram block J_cc' = <Psi_c, Psi_c'> over a working set.
Eigen::MatrixXd exact_j(std::span<const ConstraintVector> w, const KernelCache& cache);

/// One oracle estimate per unordered pair (diagonal included), mirrored.
Eigen::MatrixXd estimate_jtilde(const Eigen::MatrixXd& exact, InnerProductOracle& oracle,
                                double eps_j, double delta_j);
Eigen::MatrixXd estimate_jtilde(std::span<const ConstraintVector> w, const KernelCache& cache,
                                InnerProductOracle& oracle, double eps_j, double delta_j);

struct XiEstimate {
  Eigen::VectorXd per_constraint;
  double xi_hat = 0.0;
};

/// xi_c = max(||c||_1/m - (Jhat a)_c, 0); xi_hat = max_c xi_c + 1/t_max.
XiEstimate compute_xi_hat(const Eigen::VectorXd& alpha, const Eigen::MatrixXd& jhat,
                          std::span<const ConstraintVector> w, std::size_t m, int t_max);

/// zeta_i from one oracle call on sum_c a_c <Psi_c, y_i Phi(x_i)>.
Eigen::VectorXd compute_zetas(const Eigen::VectorXd& alpha,
                              std::span<const ConstraintVector> w, const KernelCache& cache,
                              InnerProductOracle& oracle, double eps, double delta_zeta,
                              int threads = 1);

/// c_i = [zeta_i < 1].
ConstraintVector next_constraint(const Eigen::VectorXd& zetas);

/// (1/m) sum_i max(0, 1 - zeta_i).
double hinge_sum(const Eigen::VectorXd& zetas);

/// `t` is the already incremented iteration counter.
bool should_terminate(const Eigen::VectorXd& zetas, double xi_hat, double eps, int t,
                      int t_max);

/// Noisy-inner-product cutting-plane training.
TrainResult train(const KernelCache& cache, const TrainConfig& cfg,
                  InnerProductOracle& oracle);
TrainResult train(const Dataset& ds, const TrainConfig& cfg, InnerProductOracle& oracle);

struct SvmPerfConfig {
  double C = 1e4;
  double eps = 1e-2;
  int max_iterations = 500;
  std::optional<ConstraintVector> c_init;
  QpOptions qp;

  void validate() const;
};

/// Exact cutting-plane training on any symmetric kernel.
TrainResult train_svmperf(const KernelCache& cache, const SvmPerfConfig& cfg);

/// beta_j = y_j sum_c a_c c_j / m, so that w = sum_j beta_j Phi(x_j).
Eigen::VectorXd expansion_weights(const Model& model, const Eigen::VectorXd& labels);

/// y_i <w, Phi(x_i)> for every training point.
Eigen::VectorXd training_margins(const Model& model, const KernelCache& cache);

/// 1/2 ||w||^2 + C xi_hat with exact inner products.
double primal_objective(const Model& model, const KernelCache& cache);

/// Largest violation over all 2^m constraints, max_c (1/m)|c| - <w, Psi_c>,
/// found coordinate-wise: it equals the hinge sum of the exact margins.
double max_constraint_violation(const Model& model, const KernelCache& cache);

struct DualIncreaseStep {
  int t = 0;
  double before = 0.0;  // D*_{W_t}
  double after = 0.0;   // D*_{W_{t+1}}
  bool violated = false;
};

struct DualIncreaseAudit {
  double bound = 0.0;
  std::vector<DualIncreaseStep> steps;
  std::size_t violations = 0;
};

/// Re-solves every recorded working set with the exact J and checks
/// D*_{W_{t+1}} - D*_{W_t} >= min{C eps/2, eps^2/(8 R^2)} - C/t_max for each
/// iteration that did not terminate.
DualIncreaseAudit dual_increase_audit(const TrainResult& run, const KernelCache& cache,
                                      const TrainConfig& cfg);

/// max_i K_ii.
double kernel_radius_squared(const KernelCache& cache);

}  // namespace qsvm
