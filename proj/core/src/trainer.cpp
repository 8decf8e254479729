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

#include "qsvm/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qsvm/parallel.hpp"

namespace qsvm {
namespace {

ConstraintVector initial_constraint(const std::optional<ConstraintVector>& c_init,
                                    std::size_t m) {
  if (!c_init) return ConstraintVector::ones(m);
  if (c_init->size() != m) {
    throw std::invalid_argument("initial constraint length does not match the data set");
  }
  return *c_init;
}

Eigen::VectorXd constraint_offsets(std::span<const ConstraintVector> w, std::size_t m) {
  Eigen::VectorXd b(static_cast<Eigen::Index>(w.size()));
  for (std::size_t k = 0; k < w.size(); ++k) {
    b[static_cast<Eigen::Index>(k)] =
        static_cast<double>(w[k].count()) / static_cast<double>(m);
  }
  return b;
}

// <Psi_c', Psi_c> = (1/m) sum_i c'_i y_i p_c[i], with p_c = K (c o y) / m.
double product_inner(const ConstraintVector& cp, const Eigen::VectorXd& p_c,
                     const Eigen::VectorXd& y) {
  double acc = 0.0;
  for (std::size_t i : cp.support()) {
    const auto e = static_cast<Eigen::Index>(i);
    acc += y[e] * p_c[e];
  }
  return acc / static_cast<double>(cp.size());
}

// Working set with cached feature products and the exact J block.
class WorkingSet {
 public:
  explicit WorkingSet(const KernelCache& cache) : cache_(cache) {}

  void add(ConstraintVector c) {
    const Eigen::VectorXd p = feature_products(c, cache_);
    const Eigen::VectorXd& y = cache_.labels();
    const auto k = static_cast<Eigen::Index>(constraints_.size());
    Eigen::MatrixXd grown = Eigen::MatrixXd::Zero(k + 1, k + 1);
    grown.topLeftCorner(k, k) = j_;
    for (Eigen::Index a = 0; a < k; ++a) {
      const double v = 0.5 * (product_inner(constraints_[static_cast<std::size_t>(a)], p, y) +
                              product_inner(c, products_[static_cast<std::size_t>(a)], y));
      grown(a, k) = v;
      grown(k, a) = v;
    }
    grown(k, k) = product_inner(c, p, y);
    j_ = std::move(grown);
    constraints_.push_back(std::move(c));
    products_.push_back(p);
  }

  bool contains(const ConstraintVector& c) const {
    return std::find(constraints_.begin(), constraints_.end(), c) != constraints_.end();
  }

  std::size_t size() const noexcept { return constraints_.size(); }
  const std::vector<ConstraintVector>& constraints() const noexcept { return constraints_; }
  const Eigen::MatrixXd& j() const noexcept { return j_; }

  // y_i sum_c a_c p_c[i].
  Eigen::VectorXd margins(const Eigen::VectorXd& alpha) const {
    const Eigen::VectorXd& y = cache_.labels();
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(y.size());
    for (std::size_t k = 0; k < products_.size(); ++k) {
      const double a = alpha[static_cast<Eigen::Index>(k)];
      if (a != 0.0) acc += a * products_[k];
    }
    return y.cwiseProduct(acc);
  }

  // <Psi_c, Psi_c'> for every c in the set, against an outside constraint.
  Eigen::VectorXd cross(const ConstraintVector& c) const {
    const Eigen::VectorXd& y = cache_.labels();
    Eigen::VectorXd out(static_cast<Eigen::Index>(products_.size()));
    for (std::size_t k = 0; k < products_.size(); ++k) {
      out[static_cast<Eigen::Index>(k)] = product_inner(c, products_[k], y);
    }
    return out;
  }

  double psi_min() const {
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < j_.rows(); ++k) {
      const double norm = std::sqrt(std::max(j_(k, k), 0.0));
      if (norm > 1e-14) best = std::min(best, norm);
    }
    return std::isfinite(best) ? best : 0.0;
  }

 private:
  const KernelCache& cache_;
  std::vector<ConstraintVector> constraints_;
  std::vector<Eigen::VectorXd> products_;
  Eigen::MatrixXd j_;
};

Eigen::VectorXd padded(const Eigen::VectorXd& alpha, Eigen::Index k) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(k);
  out.head(std::min(k, alpha.size())) = alpha.head(std::min(k, alpha.size()));
  return out;
}

Eigen::VectorXd noisy_zetas(const Eigen::VectorXd& exact, InnerProductOracle& oracle,
                            double eps, double delta_zeta, int threads) {
  const auto m = static_cast<std::size_t>(exact.size());
  const std::uint64_t first = oracle.reserve(m);
  Eigen::VectorXd out(exact.size());
  parallel_for(m, threads, [&](std::size_t i) {
    const auto e = static_cast<Eigen::Index>(i);
    out[e] = oracle.estimate_at(exact[e], eps, delta_zeta, first + i);
  });
  return out;
}

}  // namespace

void TrainConfig::validate() const {
  if (!(C > 0.0) || !std::isfinite(C)) throw std::invalid_argument("C must be positive");
  if (!(eps > 0.0) || !std::isfinite(eps)) throw std::invalid_argument("eps must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  if (t_max < 1) throw std::invalid_argument("t_max must be at least 1");
  if (threads < 1) throw std::invalid_argument("threads must be at least 1");
}

void SvmPerfConfig::validate() const {
  if (!(C > 0.0) || !std::isfinite(C)) throw std::invalid_argument("C must be positive");
  if (!(eps > 0.0) || !std::isfinite(eps)) throw std::invalid_argument("eps must be positive");
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be at least 1");
}

ToleranceSchedule tolerance_schedule(int t, const TrainConfig& cfg, std::size_t m) {
  if (t < 1 || t > cfg.t_max) throw std::out_of_range("iteration index outside [1, t_max]");
  if (m == 0) throw std::invalid_argument("tolerance schedule needs m > 0");
  const double td = static_cast<double>(t);
  const double tm = static_cast<double>(cfg.t_max);
  return {1.0 / (cfg.C * td * tm), cfg.delta / (2.0 * td * td * tm),
          cfg.delta / (2.0 * static_cast<double>(m) * tm)};
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::tolerance: return "tolerance";
    case Termination::cap: return "cap";
    case Termination::stalled: return "stalled";
  }
  return "unknown";
}

Termination termination_from_string(const std::string& s) {
  if (s == "tolerance") return Termination::tolerance;
  if (s == "cap") return Termination::cap;
  if (s == "stalled") return Termination::stalled;
  throw std::invalid_argument("unknown termination status: " + s);
}

Eigen::MatrixXd exact_j(std::span<const ConstraintVector> w, const KernelCache& cache) {
  WorkingSet ws(cache);
  for (const auto& c : w) {
    if (c.size() != cache.size()) {
      throw std::invalid_argument("constraint length does not match the data set");
    }
    ws.add(c);
  }
  return ws.j();
}

Eigen::MatrixXd estimate_jtilde(const Eigen::MatrixXd& exact, InnerProductOracle& oracle,
                                double eps_j, double delta_j) {
  const Eigen::Index k = exact.rows();
  Eigen::MatrixXd out(k, k);
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = a; b < k; ++b) {
      const double v = oracle.estimate(exact(a, b), eps_j, delta_j);
      out(a, b) = v;
      out(b, a) = v;
    }
  }
  return out;
}

Eigen::MatrixXd estimate_jtilde(std::span<const ConstraintVector> w, const KernelCache& cache,
                                InnerProductOracle& oracle, double eps_j, double delta_j) {
  return estimate_jtilde(exact_j(w, cache), oracle, eps_j, delta_j);
}

XiEstimate compute_xi_hat(const Eigen::VectorXd& alpha, const Eigen::MatrixXd& jhat,
                          std::span<const ConstraintVector> w, std::size_t m, int t_max) {
  const auto k = static_cast<Eigen::Index>(w.size());
  if (alpha.size() != k || jhat.rows() != k || jhat.cols() != k || m == 0 || t_max < 1) {
    throw std::invalid_argument("compute_xi_hat: inconsistent sizes");
  }
  XiEstimate out;
  out.per_constraint = (constraint_offsets(w, m) - jhat * alpha).cwiseMax(0.0);
  out.xi_hat = out.per_constraint.maxCoeff() + 1.0 / static_cast<double>(t_max);
  return out;
}

Eigen::VectorXd compute_zetas(const Eigen::VectorXd& alpha,
                              std::span<const ConstraintVector> w, const KernelCache& cache,
                              InnerProductOracle& oracle, double eps, double delta_zeta,
                              int threads) {
  if (alpha.size() != static_cast<Eigen::Index>(w.size())) {
    throw std::invalid_argument("compute_zetas: alpha and working set sizes differ");
  }
  WorkingSet ws(cache);
  for (const auto& c : w) ws.add(c);
  return noisy_zetas(ws.margins(alpha), oracle, eps, delta_zeta, threads);
}

ConstraintVector next_constraint(const Eigen::VectorXd& zetas) {
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(zetas.size()));
  for (Eigen::Index i = 0; i < zetas.size(); ++i) {
    bits[static_cast<std::size_t>(i)] = zetas[i] < 1.0 ? 1 : 0;
  }
  return ConstraintVector(std::move(bits));
}

double hinge_sum(const Eigen::VectorXd& zetas) {
  if (zetas.size() == 0) return 0.0;
  return (1.0 - zetas.array()).cwiseMax(0.0).sum() / static_cast<double>(zetas.size());
}

bool should_terminate(const Eigen::VectorXd& zetas, double xi_hat, double eps, int t,
                      int t_max) {
  return hinge_sum(zetas) <= xi_hat + 2.0 * eps || t > t_max;
}

TrainResult train(const KernelCache& cache, const TrainConfig& cfg,
                  InnerProductOracle& oracle) {
  cfg.validate();
  const std::size_t m = cache.size();
  if (m == 0) throw std::invalid_argument("training set is empty");

  WorkingSet ws(cache);
  ws.add(initial_constraint(cfg.c_init, m));
  TrainResult out;
  out.history = ws.constraints();

  Eigen::VectorXd previous;
  for (int t = 1;; ++t) {
    const ToleranceSchedule sched = tolerance_schedule(t, cfg, m);
    const auto k = static_cast<Eigen::Index>(ws.size());

    Eigen::MatrixXd jtilde = estimate_jtilde(ws.j(), oracle, sched.eps_j, sched.delta_j);
    Eigen::MatrixXd jhat = psd_project(jtilde);

    RestrictedDual rd{jhat, constraint_offsets(ws.constraints(), m), cfg.C};
    const Eigen::VectorXd warm = padded(previous, k);
    DualSolution sol = solve_restricted_dual(rd, &warm, cfg.qp);
    previous = sol.alpha;

    const XiEstimate xi = compute_xi_hat(sol.alpha, jhat, ws.constraints(), m, cfg.t_max);
    Eigen::VectorXd zetas =
        noisy_zetas(ws.margins(sol.alpha), oracle, cfg.eps, sched.delta_zeta, cfg.threads);
    ConstraintVector next = next_constraint(zetas);

    IterationRecord rec;
    rec.t = t;
    rec.schedule = sched;
    rec.dual_objective = sol.objective;
    rec.kkt_residual = sol.kkt_residual;
    rec.qp_iterations = sol.iterations;
    rec.xi_hat = xi.xi_hat;
    rec.hinge = hinge_sum(zetas);
    rec.jtilde_error = (ws.j() - jtilde).norm();
    rec.jhat_error = (ws.j() - jhat).norm();
    rec.next_ones = next.count();
    rec.tolerance_met = rec.hinge <= xi.xi_hat + 2.0 * cfg.eps;
    out.trace.push_back(rec);

    const bool duplicate = ws.contains(next);
    if (!duplicate) out.history.push_back(next);

    std::optional<Termination> stop;
    if (should_terminate(zetas, xi.xi_hat, cfg.eps, t + 1, cfg.t_max)) {
      stop = rec.tolerance_met ? Termination::tolerance : Termination::cap;
    } else if (duplicate) {
      stop = Termination::stalled;
    }

    if (stop) {
      Model& model = out.model;
      model.constraints = ws.constraints();
      model.alpha = sol.alpha;
      model.xi_hat = xi.xi_hat;
      model.psi_min = ws.psi_min();
      model.iterations = t;
      model.terminated_by = *stop;
      model.config = cfg;
      model.config.c_init = ws.constraints().front();
      out.final_state = {ws.constraints(), std::move(jtilde), std::move(jhat), std::move(sol),
                         xi.xi_hat, std::move(zetas), t};
      return out;
    }
    ws.add(std::move(next));
  }
}

TrainResult train(const Dataset& ds, const TrainConfig& cfg, InnerProductOracle& oracle) {
  return train(gram(ds, cfg.threads), cfg, oracle);
}

TrainResult train_svmperf(const KernelCache& cache, const SvmPerfConfig& cfg) {
  cfg.validate();
  const std::size_t m = cache.size();
  if (m == 0) throw std::invalid_argument("training set is empty");

  WorkingSet ws(cache);
  ws.add(initial_constraint(cfg.c_init, m));
  TrainResult out;
  out.history = ws.constraints();

  Eigen::VectorXd previous;
  for (int t = 1;; ++t) {
    const auto k = static_cast<Eigen::Index>(ws.size());
    // Exact blocks can carry rounding-level negative eigenvalues.
    RestrictedDual rd{psd_project(ws.j()), constraint_offsets(ws.constraints(), m), cfg.C};
    const Eigen::VectorXd warm = padded(previous, k);
    DualSolution sol = solve_restricted_dual(rd, &warm, cfg.qp);
    previous = sol.alpha;

    const Eigen::VectorXd slack = rd.b - ws.j() * sol.alpha;
    const double xi = std::max(0.0, slack.maxCoeff());
    Eigen::VectorXd margins = ws.margins(sol.alpha);
    ConstraintVector next = next_constraint(margins);
    const double violation = static_cast<double>(next.count()) / static_cast<double>(m) -
                             sol.alpha.dot(ws.cross(next));

    IterationRecord rec;
    rec.t = t;
    rec.dual_objective = sol.objective;
    rec.kkt_residual = sol.kkt_residual;
    rec.qp_iterations = sol.iterations;
    rec.xi_hat = xi;
    rec.hinge = hinge_sum(margins);
    rec.next_ones = next.count();
    rec.tolerance_met = violation <= xi + cfg.eps;
    out.trace.push_back(rec);

    const bool duplicate = ws.contains(next);
    if (!duplicate) out.history.push_back(next);

    std::optional<Termination> stop;
    if (rec.tolerance_met) {
      stop = Termination::tolerance;
    } else if (duplicate) {
      stop = Termination::stalled;
    } else if (t >= cfg.max_iterations) {
      stop = Termination::cap;
    }

    if (stop) {
      Model& model = out.model;
      model.constraints = ws.constraints();
      model.alpha = sol.alpha;
      model.xi_hat = xi;
      model.psi_min = ws.psi_min();
      model.iterations = t;
      model.terminated_by = *stop;
      model.config.C = cfg.C;
      model.config.eps = cfg.eps;
      model.config.t_max = cfg.max_iterations;
      model.config.c_init = ws.constraints().front();
      model.config.qp = cfg.qp;
      out.final_state = {ws.constraints(), ws.j(), rd.jhat, std::move(sol), xi,
                         std::move(margins), t};
      return out;
    }
    ws.add(std::move(next));
  }
}

Eigen::VectorXd expansion_weights(const Model& model, const Eigen::VectorXd& labels) {
  const std::size_t m = static_cast<std::size_t>(labels.size());
  if (model.alpha.size() != static_cast<Eigen::Index>(model.constraints.size())) {
    throw std::invalid_argument("model weights and constraints differ in length");
  }
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(labels.size());
  for (std::size_t k = 0; k < model.constraints.size(); ++k) {
    const ConstraintVector& c = model.constraints[k];
    if (c.size() != m) {
      throw std::invalid_argument("model constraints do not match the training set size");
    }
    const double a = model.alpha[static_cast<Eigen::Index>(k)];
    if (a == 0.0) continue;
    for (std::size_t j : c.support()) beta[static_cast<Eigen::Index>(j)] += a;
  }
  return labels.cwiseProduct(beta) / static_cast<double>(m);
}

Eigen::VectorXd training_margins(const Model& model, const KernelCache& cache) {
  const Eigen::VectorXd& y = cache.labels();
  return y.cwiseProduct(cache.multiply(expansion_weights(model, y)));
}

double primal_objective(const Model& model, const KernelCache& cache) {
  const Eigen::VectorXd beta = expansion_weights(model, cache.labels());
  return 0.5 * beta.dot(cache.multiply(beta)) + model.config.C * model.xi_hat;
}

double max_constraint_violation(const Model& model, const KernelCache& cache) {
  return hinge_sum(training_margins(model, cache));
}

double kernel_radius_squared(const KernelCache& cache) {
  double r2 = 0.0;
  for (std::size_t i = 0; i < cache.size(); ++i) r2 = std::max(r2, cache(i, i));
  return r2;
}

DualIncreaseAudit dual_increase_audit(const TrainResult& run, const KernelCache& cache,
                                      const TrainConfig& cfg) {
  DualIncreaseAudit audit;
  const double r2 = std::max(kernel_radius_squared(cache), 1e-300);
  audit.bound = std::min(cfg.C * cfg.eps / 2.0, cfg.eps * cfg.eps / (8.0 * r2)) -
                cfg.C / static_cast<double>(cfg.t_max);
  const std::size_t m = cache.size();

  WorkingSet ws(cache);
  std::vector<double> optimum;  // D*_{W_t} at index t - 1
  auto solve_prefix = [&](std::size_t t) {
    while (ws.size() < t) ws.add(run.history[ws.size()]);
    while (optimum.size() < t) {
      const std::size_t k = optimum.size() + 1;
      std::span<const ConstraintVector> prefix(ws.constraints().data(), k);
      RestrictedDual rd{psd_project(ws.j().topLeftCorner(static_cast<Eigen::Index>(k),
                                                         static_cast<Eigen::Index>(k))),
                        constraint_offsets(prefix, m), cfg.C};
      optimum.push_back(solve_restricted_dual(rd, nullptr, cfg.qp).objective);
    }
    return optimum[t - 1];
  };

  for (const IterationRecord& rec : run.trace) {
    const auto t = static_cast<std::size_t>(rec.t);
    if (rec.tolerance_met || run.history.size() < t + 1) continue;
    DualIncreaseStep step;
    step.t = rec.t;
    step.before = solve_prefix(t);
    step.after = solve_prefix(t + 1);
    step.violated = step.after - step.before < audit.bound;
    if (step.violated) ++audit.violations;
    audit.steps.push_back(step);
  }
  return audit;
}

}  // namespace qsvm
