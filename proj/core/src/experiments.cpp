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

#include "qsvm/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <string>

#include "qsvm/classifier.hpp"
#include "qsvm/feature_kernel.hpp"

namespace qsvm {
namespace {

// Substream tags keep the per-row draws independent of each other.
constexpr std::uint64_t kDataStream = 0xD47A;
constexpr std::uint64_t kSplitStream = 0x5B117;
constexpr std::uint64_t kOracleStream = 0x0AC1E;
constexpr std::uint64_t kRbfStream = 0x4BF;
constexpr std::uint64_t kConfigStream = 0xC0F16;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

Eigen::VectorXd label_vector(const Dataset& ds) {
  const std::vector<int> labels = ds.labels();
  Eigen::VectorXd y(static_cast<Eigen::Index>(labels.size()));
  for (std::size_t i = 0; i < labels.size(); ++i) y[static_cast<Eigen::Index>(i)] = labels[i];
  return y;
}

double rbf_fit_and_score(const Dataset& fit, const Dataset& score, double C, double gamma,
                         double eps, int max_iterations) {
  const std::vector<CouplingPoint> fit_points = fit.points();
  const std::vector<int> fit_labels = fit.labels();
  SvmPerfConfig cfg;
  cfg.C = C;
  cfg.eps = eps;
  cfg.max_iterations = max_iterations;
  const TrainResult run = train_svmperf(rbf_gram(fit_points, fit_labels, gamma), cfg);
  const std::vector<CouplingPoint> score_points = score.points();
  const std::vector<int> score_labels = score.labels();
  return evaluate_rbf(run.model, fit_points, label_vector(fit), gamma, score_points,
                      score_labels);
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace

RbfGrid RbfGrid::standard() {
  RbfGrid g;
  for (int e = 0; e <= 5; ++e) g.C.push_back(std::pow(10.0, e));
  for (int e = -4; e <= 4; ++e) g.gamma.push_back(std::ldexp(1.0, e));
  return g;
}

RbfResult rbf_baseline(const Dataset& train, const Dataset& test, const RbfGrid& grid,
                       double holdout, std::uint64_t seed, double eps, int max_iterations) {
  const std::vector<double> cs = sorted_unique(grid.C);
  const std::vector<double> gammas = sorted_unique(grid.gamma);
  if (cs.empty() || gammas.empty()) throw std::invalid_argument("RBF grid is empty");
  if (!(holdout > 0.0 && holdout < 1.0)) {
    throw std::invalid_argument("hold-out fraction must lie in (0, 1)");
  }
  const auto [fit, hold] = split(train, 1.0 - holdout, seed);

  RbfResult best;
  best.holdout_accuracy = -1.0;
  for (double c : cs) {
    for (double g : gammas) {
      const double acc = rbf_fit_and_score(fit, hold, c, g, eps, max_iterations);
      if (acc > best.holdout_accuracy) {
        best.holdout_accuracy = acc;
        best.C = c;
        best.gamma = g;
      }
    }
  }
  best.accuracy = rbf_fit_and_score(train, test, best.C, best.gamma, eps, max_iterations);
  return best;
}

Dataset generate_balanced(const ChainConfig& chain, std::size_t m, double range_lo,
                          double range_hi, double balance_limit, int budget,
                          std::uint64_t seed, int threads) {
  for (int attempt = 0; attempt < budget; ++attempt) {
    GenSpec spec;
    spec.m = m;
    spec.range_lo = range_lo;
    spec.range_hi = range_hi;
    spec.seed = derive_seed(seed, static_cast<std::uint64_t>(attempt));
    spec.threads = threads;
    Dataset ds = generate(chain, spec);
    if (balance_ratio(ds) <= balance_limit) return ds;
  }
  throw std::runtime_error("no balanced data set within " + std::to_string(budget) +
                           " redraws; the chain configuration is too lopsided");
}

std::vector<Table1Row> run_table1(std::span<const std::size_t> m_list,
                                  const ExperimentConfig& cfg, std::uint64_t seed) {
  for (std::size_t m : m_list) {
    if (m > kMaxDeskSamples) {
      throw OutOfScope("m = " + std::to_string(m) +
                       " is outside desk scale: the Gram cache would not fit in memory "
                       "(limit " + std::to_string(kMaxDeskSamples) + ")");
    }
    if (m < 10) throw std::invalid_argument("table1 needs m >= 10");
  }
  cfg.train.validate();

  std::vector<Table1Row> rows;
  for (std::size_t m : m_list) {
    const auto start = Clock::now();
    Table1Row row;
    row.m = m;
    row.seed = derive_seed(seed, m);
    const Dataset ds = generate_balanced(cfg.chain, m, cfg.range_lo, cfg.range_hi,
                                         cfg.balance_limit, cfg.redraw_budget,
                                         derive_seed(row.seed, kDataStream), cfg.threads);
    const auto [train_set, test_set] =
        split(ds, cfg.train_frac, derive_seed(row.seed, kSplitStream));

    TrainConfig tc = cfg.train;
    tc.threads = cfg.threads;
    InnerProductOracle oracle(cfg.oracle, derive_seed(row.seed, kOracleStream));
    const TrainResult run = train(train_set, tc, oracle);
    row.psi_min = run.model.psi_min;
    row.iterations = run.model.iterations;
    row.terminated_by = run.model.terminated_by;
    row.accuracy = evaluate(run.model, train_set, test_set, oracle, tc.eps, tc.delta,
                            cfg.threads);
    if (cfg.with_rbf) {
      row.rbf_accuracy = rbf_baseline(train_set, test_set, cfg.grid, cfg.holdout,
                                      derive_seed(row.seed, kRbfStream), tc.eps)
                             .accuracy;
    } else {
      row.rbf_accuracy = std::nan("");
    }
    row.wall_seconds = seconds_since(start);
    rows.push_back(row);
  }
  return rows;
}

std::vector<Table2Row> run_table2(std::span<const int> n_list, std::size_t instances,
                                  const Table2Config& cfg, std::uint64_t seed) {
  if (instances == 0 || instances > 100) {
    throw std::invalid_argument("table2 instances must lie in [1, 100]");
  }
  if (cfg.m > kMaxDeskSamples) {
    throw OutOfScope("m = " + std::to_string(cfg.m) + " is outside desk scale");
  }
  for (int n : n_list) {
    if (n < 4 || n > 8) throw std::invalid_argument("table2 supports N in [4, 8]");
  }
  const ExperimentConfig& base = cfg.base;
  base.train.validate();

  std::vector<Table2Row> rows;
  for (int n : n_list) {
    const auto start = Clock::now();
    Table2Row row;
    row.num_spins = n;
    row.instances = instances;
    row.seed = derive_seed(seed, static_cast<std::uint64_t>(n));
    for (std::size_t inst = 0; inst < instances; ++inst) {
      const std::uint64_t inst_seed = derive_seed(row.seed, inst);
      std::optional<Dataset> ds;
      for (int attempt = 0; attempt < cfg.config_budget && !ds; ++attempt) {
        std::mt19937_64 rng(derive_seed(derive_seed(inst_seed, kConfigStream),
                                        static_cast<std::uint64_t>(attempt)));
        ChainConfig chain = base.chain;
        chain.num_spins = n;
        chain.mu0 = cfg.mu0_per_spin * n;
        chain.k_coupling = std::uniform_int_distribution<int>(1, cfg.k_coupling_max)(rng);
        chain.k_transverse = std::uniform_int_distribution<int>(1, cfg.k_transverse_max)(rng);
        chain.field = std::uniform_real_distribution<double>(0.0, cfg.field_max)(rng);
        // k_Delta a multiple of N zeroes every transverse term: a classical chain.
        if (chain.k_transverse % n == 0) continue;
        const std::uint64_t data_seed = derive_seed(inst_seed, 1000 + attempt);

        // Cheap screen on a prefix: sample i of a draw does not depend on m.
        GenSpec spec;
        spec.m = std::min<std::size_t>(cfg.m, 100);
        spec.range_lo = base.range_lo;
        spec.range_hi = base.range_hi;
        spec.seed = data_seed;
        spec.threads = base.threads;
        if (balance_ratio(generate(chain, spec)) > base.balance_limit + 0.1) continue;
        spec.m = cfg.m;
        Dataset full = generate(chain, spec);
        if (balance_ratio(full) <= base.balance_limit) ds.emplace(std::move(full));
      }
      if (!ds) {
        throw std::runtime_error("table2: no balanced configuration for N = " +
                                 std::to_string(n) + " within the redraw budget");
      }
      TrainConfig tc = base.train;
      tc.threads = base.threads;
      InnerProductOracle oracle(base.oracle, derive_seed(inst_seed, kOracleStream));
      row.psi_min.push_back(train(*ds, tc, oracle).model.psi_min);
    }
    const auto count = static_cast<double>(row.psi_min.size());
    double sum = 0.0;
    for (double v : row.psi_min) sum += v;
    row.psi_min_mean = sum / count;
    row.psi_min_min = *std::min_element(row.psi_min.begin(), row.psi_min.end());
    double ss = 0.0;
    for (double v : row.psi_min) ss += (v - row.psi_min_mean) * (v - row.psi_min_mean);
    row.psi_min_sd = row.psi_min.size() > 1 ? std::sqrt(ss / (count - 1.0)) : 0.0;
    row.wall_seconds = seconds_since(start);
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_table1_tsv(std::ostream& out, std::span<const Table1Row> rows) {
  out << "m\tpsi_min\titerations\taccuracy\trbf_accuracy\n";
  for (const auto& r : rows) {
    out << r.m << '\t' << fmt("%.6g", r.psi_min) << '\t' << r.iterations << '\t'
        << fmt("%.4f", r.accuracy) << '\t'
        << (std::isnan(r.rbf_accuracy) ? std::string("NA") : fmt("%.4f", r.rbf_accuracy))
        << '\n';
  }
}

void write_table2_tsv(std::ostream& out, std::span<const Table2Row> rows) {
  out << "N\tinstances\tpsi_min_mean\tpsi_min_min\tpsi_min_sd\n";
  for (const auto& r : rows) {
    out << r.num_spins << '\t' << r.instances << '\t' << fmt("%.6g", r.psi_min_mean) << '\t'
        << fmt("%.6g", r.psi_min_min) << '\t' << fmt("%.6g", r.psi_min_sd) << '\n';
  }
}

}  // namespace qsvm
