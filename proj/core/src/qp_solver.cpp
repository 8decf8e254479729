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

#include "qsvm/qp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace qsvm {
namespace {

constexpr double kCurvatureFloor = 1e-300;

// Coordinates 0..k-1 are the dual weights; coordinate k is the budget slack,
// which has zero gradient and zero curvature.
struct SimplexState {
  Eigen::VectorXd x;  // length k + 1, sums to C
  Eigen::VectorXd g;  // gradient, g[k] = 0
};

double slack_threshold(double budget) { return 1e-13 * std::max(1.0, budget); }

Eigen::VectorXd gradient(const Eigen::VectorXd& alpha, const RestrictedDual& rd) {
  return rd.b - rd.jhat * alpha;
}

void refresh_gradient(SimplexState& s, const RestrictedDual& rd) {
  const Eigen::Index k = rd.b.size();
  s.g.head(k) = gradient(s.x.head(k), rd);
  s.g[k] = 0.0;
}

// Max-violating pair with second-order selection of the decreasing side.
// Returns the current violation; sets (up, down) to the chosen pair.
double select_pair(const SimplexState& s, const RestrictedDual& rd, Eigen::Index& up,
                   Eigen::Index& down) {
  const Eigen::Index k = rd.b.size();
  const Eigen::Index n = k + 1;
  up = 0;
  for (Eigen::Index t = 1; t < n; ++t) {
    if (s.g[t] > s.g[up]) up = t;
  }
  double lowest = std::numeric_limits<double>::infinity();
  down = -1;
  double best_score = -1.0;
  const double q_uu = up < k ? rd.jhat(up, up) : 0.0;
  for (Eigen::Index t = 0; t < n; ++t) {
    const bool positive = t < k ? s.x[t] > 0.0 : s.x[t] > slack_threshold(rd.budget);
    if (!positive) continue;
    lowest = std::min(lowest, s.g[t]);
    if (t == up) continue;
    const double diff = s.g[up] - s.g[t];
    if (diff <= 0.0) continue;
    const double q_tt = t < k ? rd.jhat(t, t) : 0.0;
    const double q_ut = (t < k && up < k) ? rd.jhat(up, t) : 0.0;
    const double curvature = std::max(q_uu + q_tt - 2.0 * q_ut, 1e-12);
    const double score = diff * diff / curvature;
    if (score > best_score) {
      best_score = score;
      down = t;
    }
  }
  return std::max(0.0, s.g[up] - lowest);
}

void pair_step(SimplexState& s, const RestrictedDual& rd, Eigen::Index up,
               Eigen::Index down) {
  const Eigen::Index k = rd.b.size();
  const double q_uu = up < k ? rd.jhat(up, up) : 0.0;
  const double q_dd = down < k ? rd.jhat(down, down) : 0.0;
  const double q_ud = (up < k && down < k) ? rd.jhat(up, down) : 0.0;
  const double curvature = q_uu + q_dd - 2.0 * q_ud;
  const double slope = s.g[up] - s.g[down];
  double step = s.x[down];
  if (curvature > kCurvatureFloor) step = std::min(step, slope / curvature);
  if (!(step > 0.0)) return;
  s.x[up] += step;
  if (step >= s.x[down]) {
    s.x[down] = 0.0;
  } else {
    s.x[down] -= step;
  }
  // g = b - J a changes by -step * (J e_up - J e_down) on the weight block.
  if (up < k) s.g.head(k).noalias() -= step * rd.jhat.col(up);
  if (down < k) s.g.head(k).noalias() += step * rd.jhat.col(down);
}

// Solves the stationarity system on the face {t : x_t > 0}. Returns false when
// the face solution leaves the feasible set.
bool polish_face(SimplexState& s, const RestrictedDual& rd) {
  const Eigen::Index k = rd.b.size();
  std::vector<Eigen::Index> face;
  for (Eigen::Index t = 0; t < k; ++t) {
    if (s.x[t] > 0.0) face.push_back(t);
  }
  const bool slack_free = s.x[k] > slack_threshold(rd.budget);
  const auto f = static_cast<Eigen::Index>(face.size());
  if (f == 0) return false;

  Eigen::VectorXd solution;
  if (slack_free) {
    Eigen::MatrixXd a(f, f);
    Eigen::VectorXd rhs(f);
    for (Eigen::Index r = 0; r < f; ++r) {
      rhs[r] = rd.b[face[r]];
      for (Eigen::Index c = 0; c < f; ++c) a(r, c) = rd.jhat(face[r], face[c]);
    }
    solution = a.completeOrthogonalDecomposition().solve(rhs);
    if (!((a * solution - rhs).cwiseAbs().maxCoeff() <= 1e-10)) return false;
  } else {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(f + 1, f + 1);
    Eigen::VectorXd rhs(f + 1);
    for (Eigen::Index r = 0; r < f; ++r) {
      rhs[r] = rd.b[face[r]];
      for (Eigen::Index c = 0; c < f; ++c) a(r, c) = rd.jhat(face[r], face[c]);
      a(r, f) = 1.0;
      a(f, r) = 1.0;
    }
    rhs[f] = rd.budget;
    const Eigen::VectorXd full = a.completeOrthogonalDecomposition().solve(rhs);
    if (!((a * full - rhs).cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, rd.budget))) {
      return false;
    }
    solution = full.head(f);
  }

  const double floor = -1e-12 * std::max(1.0, rd.budget);
  if (solution.minCoeff() < floor) return false;
  SimplexState trial;
  trial.x = Eigen::VectorXd::Zero(k + 1);
  for (Eigen::Index r = 0; r < f; ++r) trial.x[face[r]] = std::max(solution[r], 0.0);
  const double used = trial.x.head(k).sum();
  if (used > rd.budget) {
    if (used > rd.budget * (1.0 + 1e-12)) return false;
    trial.x.head(k) *= rd.budget / used;
  }
  trial.x[k] = slack_free ? std::max(rd.budget - trial.x.head(k).sum(), 0.0) : 0.0;
  trial.g.resize(k + 1);
  refresh_gradient(trial, rd);
  s = std::move(trial);
  return true;
}

SimplexState initial_state(const RestrictedDual& rd, const Eigen::VectorXd* warm_start) {
  const Eigen::Index k = rd.b.size();
  SimplexState s;
  s.x = Eigen::VectorXd::Zero(k + 1);
  if (warm_start != nullptr && warm_start->size() == k && warm_start->allFinite()) {
    Eigen::VectorXd a = warm_start->cwiseMax(0.0);
    const double used = a.sum();
    if (used > rd.budget) a *= rd.budget / used;
    s.x.head(k) = a;
  }
  s.x[k] = std::max(rd.budget - s.x.head(k).sum(), 0.0);
  s.g.resize(k + 1);
  refresh_gradient(s, rd);
  return s;
}

double state_residual(const SimplexState& s, const RestrictedDual& rd) {
  Eigen::Index up = 0;
  Eigen::Index down = 0;
  return select_pair(s, rd, up, down);
}

}  // namespace

Eigen::MatrixXd psd_project(const Eigen::MatrixXd& s) {
  if (s.rows() != s.cols()) throw std::invalid_argument("psd_project: matrix is not square");
  if (s.size() == 0) return s;
  const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  if ((s - s.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw std::invalid_argument("psd_project: matrix is not symmetric");
  }
  const Eigen::MatrixXd sym = 0.5 * (s + s.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("psd_project: eigensolver did not converge");
  }
  const Eigen::VectorXd clamped = solver.eigenvalues().cwiseMax(0.0);
  const Eigen::MatrixXd& v = solver.eigenvectors();
  Eigen::MatrixXd out = v * clamped.asDiagonal() * v.transpose();
  return 0.5 * (out + out.transpose());
}

void RestrictedDual::validate() const {
  if (jhat.rows() != jhat.cols() || jhat.rows() != b.size() || b.size() == 0) {
    throw std::invalid_argument("restricted dual: inconsistent sizes");
  }
  if (!(budget > 0.0) || !std::isfinite(budget)) {
    throw std::invalid_argument("restricted dual: budget C must be positive");
  }
  if (!jhat.allFinite() || !b.allFinite()) {
    throw std::invalid_argument("restricted dual: non-finite coefficients");
  }
  const double scale = std::max(1.0, jhat.cwiseAbs().maxCoeff());
  if ((jhat - jhat.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw std::invalid_argument("restricted dual: J is not symmetric");
  }
  const Eigen::VectorXd evals =
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(jhat, Eigen::EigenvaluesOnly)
          .eigenvalues();
  if (evals.minCoeff() < -1e-9 * scale) {
    throw std::invalid_argument("restricted dual: J is not positive semi-definite");
  }
}

double dual_objective(const Eigen::VectorXd& alpha, const RestrictedDual& rd) {
  return -0.5 * alpha.dot(rd.jhat * alpha) + rd.b.dot(alpha);
}

double kkt_residual(const Eigen::VectorXd& alpha, const RestrictedDual& rd) {
  const Eigen::Index k = rd.b.size();
  if (alpha.size() != k) throw std::invalid_argument("kkt_residual: size mismatch");
  const double infeasible =
      std::max({0.0, -alpha.minCoeff(), alpha.sum() - rd.budget * (1.0 + 1e-12)});
  SimplexState s;
  s.x.resize(k + 1);
  s.x.head(k) = alpha.cwiseMax(0.0);
  s.x[k] = std::max(rd.budget - s.x.head(k).sum(), 0.0);
  s.g.resize(k + 1);
  refresh_gradient(s, rd);
  return std::max(infeasible, state_residual(s, rd));
}

LineStep exact_line_search(const Eigen::MatrixXd& j, const Eigen::VectorXd& gradient,
                           const Eigen::VectorXd& direction, double beta_max) {
  LineStep step;
  const double slope = direction.dot(gradient);
  if (!(slope > 0.0) || !(beta_max > 0.0)) return step;
  const double curvature = direction.dot(j * direction);
  step.beta = curvature > 0.0 ? std::min(slope / curvature, beta_max) : beta_max;
  step.gain = step.beta * slope - 0.5 * step.beta * step.beta * curvature;
  return step;
}

DualSolution solve_restricted_dual(const RestrictedDual& rd,
                                   const Eigen::VectorXd* warm_start,
                                   const QpOptions& options) {
  rd.validate();
  const Eigen::Index k = rd.b.size();
  const long long cap =
      static_cast<long long>(options.max_iterations_per_var) * static_cast<long long>(k + 1);
  const long long phase = std::max<long long>(32, 8 * (k + 1));

  SimplexState s = initial_state(rd, warm_start);
  long long iterations = 0;
  double residual = state_residual(s, rd);
  int polish_failures = 0;

  while (residual > options.tolerance && iterations < cap) {
    const long long phase_end = std::min(cap, iterations + phase);
    while (iterations < phase_end) {
      Eigen::Index up = 0;
      Eigen::Index down = 0;
      residual = select_pair(s, rd, up, down);
      if (residual <= options.tolerance || down < 0) break;
      pair_step(s, rd, up, down);
      ++iterations;
      // Incremental gradient updates drift; resynchronize now and then.
      if (iterations % 256 == 0) refresh_gradient(s, rd);
    }
    refresh_gradient(s, rd);
    residual = state_residual(s, rd);
    if (residual <= options.tolerance) break;

    if (polish_failures < 64) {
      SimplexState trial = s;
      if (polish_face(trial, rd)) {
        const double trial_residual = state_residual(trial, rd);
        if (trial_residual < residual) {
          s = std::move(trial);
          residual = trial_residual;
          continue;
        }
      }
      ++polish_failures;
    }
  }

  DualSolution out;
  out.alpha = s.x.head(k);
  out.objective = dual_objective(out.alpha, rd);
  out.kkt_residual = kkt_residual(out.alpha, rd);
  out.iterations = static_cast<int>(iterations);
  if (out.kkt_residual > options.tolerance) {
    throw QpNonConvergence("restricted dual did not reach KKT tolerance (residual " +
                               std::to_string(out.kkt_residual) + ")",
                           out);
  }
  return out;
}

}  // namespace qsvm
